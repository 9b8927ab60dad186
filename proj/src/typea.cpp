#include "minuscy/typea.hpp"

#include <numeric>

namespace minuscy {

namespace {

// Column vectors of `extra` that extend the column span of `base` to the whole space.
std::vector<int> complement_columns(const Matrix& base, int dim, int p) {
    std::vector<int> chosen;
    Matrix cur = base;
    int r = rank(cur);
    for (int k = 0; k < dim; ++k) {
        Matrix e(dim, 1, p);
        e.at(k, 0) = 1;
        Matrix next = Matrix::hcat(cur, e);
        int r2 = rank(next);
        if (r2 > r) {
            chosen.push_back(k);
            cur = next;
            r = r2;
        }
    }
    return chosen;
}

Matrix columns_to_matrix(int dim, const std::vector<std::vector<int>>& cols, int p) {
    Matrix m(dim, static_cast<int>(cols.size()), p);
    for (size_t j = 0; j < cols.size(); ++j)
        for (int i = 0; i < dim; ++i) m.at(i, static_cast<int>(j)) = cols[j][i];
    return m;
}

// Solve base * X = target column by column; throws if impossible.
Matrix solve_columns(const Matrix& base, const Matrix& target) {
    Matrix x(base.cols(), target.cols(), base.prime());
    for (int c = 0; c < target.cols(); ++c) {
        std::vector<int> rhs(target.rows());
        for (int i = 0; i < target.rows(); ++i) rhs[i] = target.at(i, c);
        auto sol = solve(base, rhs);
        if (!sol) throw Error(ErrorCode::InvariantViolation, "subspace not preserved by arrow");
        for (int i = 0; i < base.cols(); ++i) x.at(i, c) = (*sol)[i];
    }
    return x;
}

// Projective cover of m: labels of the generating vertices and the map P0 -> m.
std::pair<std::vector<int>, ModuleMap> projective_cover(int n, int p, const Rep& m) {
    std::vector<int> labels;
    std::vector<std::vector<int>> gens;
    for (int v = 1; v <= n; ++v) {
        int dv = m.dim(v);
        if (dv == 0) continue;
        Matrix incoming = (v > 1) ? m.arrow(v - 1) : Matrix(dv, 0, p);
        for (int k : complement_columns(image_basis(incoming), dv, p)) {
            labels.push_back(v);
            std::vector<int> g(dv, 0);
            g[k] = 1;
            gens.push_back(g);
        }
    }
    std::vector<Rep> parts;
    for (int v : labels) parts.push_back(projective(n, p, v));
    Rep p0 = parts.empty() ? Rep(n, p, std::vector<int>(n, 0)) : Rep::direct_sum(parts);
    ModuleMap pi(p0, m);
    for (int j = 1; j <= n; ++j) {
        int col = 0;
        for (size_t k = 0; k < labels.size(); ++k) {
            if (parts[k].dim(j) == 0) continue;
            Matrix g(m.dim(labels[k]), 1, p);
            for (int i = 0; i < m.dim(labels[k]); ++i) g.at(i, 0) = gens[k][i];
            Matrix img = m.path(labels[k], j) * g;
            for (int i = 0; i < m.dim(j); ++i) pi.at(j).at(i, col) = img.at(i, 0);
            ++col;
        }
    }
    return {labels, pi};
}

// Kernel of f as a representation together with its inclusion.
std::pair<Rep, std::vector<Matrix>> kernel_with_inclusion(const ModuleMap& f) {
    const Rep& src = f.source();
    int n = src.rank(), p = src.prime();
    std::vector<Matrix> incl(n);
    std::vector<int> dims(n);
    for (int v = 1; v <= n; ++v) {
        incl[v - 1] = kernel_basis(f.at(v));
        dims[v - 1] = incl[v - 1].cols();
    }
    Rep k(n, p, dims);
    for (int v = 1; v < n; ++v) k.arrow(v) = solve_columns(incl[v], src.arrow(v) * incl[v - 1]);
    return {k, incl};
}

}  // namespace

std::string Interval::str() const { return "[" + std::to_string(a) + "," + std::to_string(b) + "]"; }

Rep::Rep(int n, int p, std::vector<int> dims) : n_(n), p_(p), dims_(std::move(dims)) {
    if (static_cast<int>(dims_.size()) != n) throw Error(ErrorCode::Dimension, "dimension vector length");
    for (int v = 1; v < n; ++v) arrows_.emplace_back(dims_[v], dims_[v - 1], p);
}

Matrix Rep::path(int i, int j) const {
    Matrix m = Matrix::identity(dim(i), p_);
    for (int v = i; v < j; ++v) m = arrow(v) * m;
    return m;
}

Rep Rep::interval(int n, int p, Interval iv) {
    if (iv.a < 1 || iv.a > iv.b || iv.b > n) throw Error(ErrorCode::Dimension, "invalid interval " + iv.str());
    std::vector<int> dims(n, 0);
    for (int v = iv.a; v <= iv.b; ++v) dims[v - 1] = 1;
    Rep r(n, p, dims);
    for (int v = iv.a; v < iv.b; ++v) r.arrow(v).at(0, 0) = 1;
    return r;
}

Rep Rep::direct_sum(const std::vector<Rep>& parts) {
    if (parts.empty()) throw Error(ErrorCode::Dimension, "empty direct sum needs a rank");
    int n = parts[0].rank(), p = parts[0].prime();
    std::vector<int> dims(n, 0);
    for (const Rep& r : parts)
        for (int v = 1; v <= n; ++v) dims[v - 1] += r.dim(v);
    Rep out(n, p, dims);
    for (int v = 1; v < n; ++v) {
        int ro = 0, co = 0;
        for (const Rep& r : parts) {
            const Matrix& a = r.arrow(v);
            for (int i = 0; i < a.rows(); ++i)
                for (int j = 0; j < a.cols(); ++j) out.arrow(v).at(ro + i, co + j) = a.at(i, j);
            ro += a.rows();
            co += a.cols();
        }
    }
    return out;
}

ModuleMap::ModuleMap(Rep source, Rep target) : src_(std::move(source)), tgt_(std::move(target)) {
    if (src_.rank() != tgt_.rank()) throw Error(ErrorCode::Dimension, "module map between different ranks");
    for (int v = 1; v <= src_.rank(); ++v) comp_.emplace_back(tgt_.dim(v), src_.dim(v), src_.prime());
}

bool ModuleMap::commutes() const {
    for (int v = 1; v < src_.rank(); ++v)
        if (tgt_.arrow(v) * at(v) != at(v + 1) * src_.arrow(v)) return false;
    return true;
}

bool ModuleMap::is_zero() const {
    for (const Matrix& m : comp_)
        if (!m.is_zero()) return false;
    return true;
}

ModuleMap ModuleMap::compose_after(const ModuleMap& first) const {
    ModuleMap out(first.source(), target());
    for (int v = 1; v <= src_.rank(); ++v) out.at(v) = at(v) * first.at(v);
    return out;
}

std::vector<ModuleMap> hom_space(const Rep& m, const Rep& nrep) {
    int n = m.rank(), p = m.prime();
    std::vector<int> offset(n + 1, 0);
    for (int v = 1; v <= n; ++v) offset[v] = offset[v - 1] + nrep.dim(v) * m.dim(v);
    int unknowns = offset[n];
    int eqs = 0;
    for (int v = 1; v < n; ++v) eqs += nrep.dim(v + 1) * m.dim(v);
    Matrix sys(eqs, unknowns, p);
    Fp f{p};
    int row = 0;
    auto var = [&](int v, int i, int j) { return offset[v - 1] + i * m.dim(v) + j; };
    for (int v = 1; v < n; ++v) {
        const Matrix& na = nrep.arrow(v);
        const Matrix& ma = m.arrow(v);
        for (int i = 0; i < nrep.dim(v + 1); ++i) {
            for (int j = 0; j < m.dim(v); ++j) {
                // (na * phi_v)(i,j) - (phi_{v+1} * ma)(i,j) = 0
                for (int k = 0; k < nrep.dim(v); ++k)
                    if (na.at(i, k)) sys.at(row, var(v, k, j)) = f.add(sys.at(row, var(v, k, j)), na.at(i, k));
                for (int k = 0; k < m.dim(v + 1); ++k)
                    if (ma.at(k, j)) sys.at(row, var(v + 1, i, k)) = f.sub(sys.at(row, var(v + 1, i, k)), ma.at(k, j));
                ++row;
            }
        }
    }
    Matrix ker = kernel_basis(sys);
    std::vector<ModuleMap> out;
    for (int c = 0; c < ker.cols(); ++c) {
        ModuleMap phi(m, nrep);
        for (int v = 1; v <= n; ++v)
            for (int i = 0; i < nrep.dim(v); ++i)
                for (int j = 0; j < m.dim(v); ++j) phi.at(v).at(i, j) = ker.at(var(v, i, j), c);
        out.push_back(std::move(phi));
    }
    return out;
}

std::optional<ModuleMap> hom_basis(int n, int p, Interval x, Interval y) {
    auto basis = hom_space(Rep::interval(n, p, x), Rep::interval(n, p, y));
    if (basis.empty()) return std::nullopt;
    if (basis.size() != 1) throw Error(ErrorCode::InvariantViolation, "interval Hom space of dimension > 1");
    ModuleMap g = basis[0];
    Fp f{p};
    int lead = 0;
    for (int v = 1; v <= n && !lead; ++v)
        if (g.at(v).rows() && g.at(v).cols() && g.at(v).at(0, 0)) lead = g.at(v).at(0, 0);
    int s = f.inv(lead);
    for (int v = 1; v <= n; ++v) {
        g.at(v) = g.at(v).scaled(s);
        if (g.at(v).rows() && g.at(v).cols() && g.at(v).at(0, 0) > 1)
            throw Error(ErrorCode::InvariantViolation, "canonical generator is not a 0/1 map");
    }
    return g;
}

Rep projective(int n, int p, int i) {
    // Paths from i: vertex j is reached iff a chain of arrows i -> ... -> j exists.
    std::vector<int> reach(n + 1, 0);
    reach[i] = 1;
    for (int v = i; v < n; ++v)
        if (reach[v]) reach[v + 1] = 1;
    std::vector<int> dims(reach.begin() + 1, reach.end());
    Rep r(n, p, dims);
    for (int v = 1; v < n; ++v)
        if (reach[v] && reach[v + 1]) r.arrow(v).at(0, 0) = 1;
    return r;
}

Rep injective(int n, int p, int i) {
    std::vector<int> reach(n + 2, 0);
    reach[i] = 1;
    for (int v = i; v > 1; --v)
        if (reach[v]) reach[v - 1] = 1;
    std::vector<int> dims(reach.begin() + 1, reach.begin() + n + 1);
    Rep r(n, p, dims);
    for (int v = 1; v < n; ++v)
        if (reach[v] && reach[v + 1]) r.arrow(v).at(0, 0) = 1;
    return r;
}

Rep simple(int n, int p, int i) {
    std::vector<int> dims(n, 0);
    dims[i - 1] = 1;
    return Rep(n, p, dims);
}

ProjectiveResolution projective_resolution(int n, int p, const Rep& m) {
    auto [labels0, pi] = projective_cover(n, p, m);
    auto [k, incl] = kernel_with_inclusion(pi);
    auto [labels1, pk] = projective_cover(n, p, k);
    // The cover of the kernel must be an isomorphism (hereditary algebra).
    for (int v = 1; v <= n; ++v)
        if (pk.at(v).rows() != pk.at(v).cols() || rank(pk.at(v)) != pk.at(v).rows())
            throw Error(ErrorCode::InvariantViolation, "kernel of projective cover is not projective");
    ModuleMap d(pk.source(), pi.source());
    for (int v = 1; v <= n; ++v) d.at(v) = incl[v - 1] * pk.at(v);
    return ProjectiveResolution{labels0, labels1, d, pi};
}

ProjectiveResolution projective_resolution(int n, int p, Interval x) {
    return projective_resolution(n, p, Rep::interval(n, p, x));
}

namespace {

std::vector<int> flatten(const ModuleMap& f) {
    std::vector<int> out;
    for (int v = 1; v <= f.source().rank(); ++v)
        for (int i = 0; i < f.at(v).rows(); ++i)
            for (int j = 0; j < f.at(v).cols(); ++j) out.push_back(f.at(v).at(i, j));
    return out;
}

}  // namespace

std::optional<ModuleMap> ext1_basis(int n, int p, Interval x, Interval y) {
    ProjectiveResolution res = projective_resolution(n, p, x);
    if (res.p1.empty()) return std::nullopt;
    Rep target = Rep::interval(n, p, y);
    auto hom1 = hom_space(res.d.source(), target);
    if (hom1.empty()) return std::nullopt;
    auto hom0 = hom_space(res.d.target(), target);
    std::vector<std::vector<int>> cols;
    for (const ModuleMap& psi : hom0) cols.push_back(flatten(psi.compose_after(res.d)));
    int len = static_cast<int>(flatten(hom1[0]).size());
    Matrix image = columns_to_matrix(len, cols, p);
    int r = rank(image);
    for (const ModuleMap& phi : hom1) {
        Matrix ext = Matrix::hcat(image, columns_to_matrix(len, {flatten(phi)}, p));
        if (rank(ext) > r) {
            ModuleMap g = phi;
            auto fl = flatten(g);
            int lead = 0;
            for (int v : fl)
                if (v) { lead = v; break; }
            int s = Fp{p}.inv(lead);
            for (int v = 1; v <= n; ++v) g.at(v) = g.at(v).scaled(s);
            return g;
        }
    }
    return std::nullopt;
}

int ext1_dim(int n, int p, Interval x, Interval y) {
    ProjectiveResolution res = projective_resolution(n, p, x);
    if (res.p1.empty()) return 0;
    Rep target = Rep::interval(n, p, y);
    auto hom1 = hom_space(res.d.source(), target);
    auto hom0 = hom_space(res.d.target(), target);
    if (hom1.empty()) return 0;
    std::vector<std::vector<int>> cols;
    for (const ModuleMap& psi : hom0) cols.push_back(flatten(psi.compose_after(res.d)));
    int len = static_cast<int>(flatten(hom1[0]).size());
    return static_cast<int>(hom1.size()) - rank(columns_to_matrix(len, cols, p));
}

Rep kernel(const ModuleMap& f) { return kernel_with_inclusion(f).first; }

Rep cokernel(const ModuleMap& f) {
    const Rep& tgt = f.target();
    int n = tgt.rank(), p = tgt.prime();
    std::vector<Matrix> proj(n), lift(n);
    std::vector<int> dims(n);
    for (int v = 1; v <= n; ++v) {
        int dv = tgt.dim(v);
        Matrix im = image_basis(f.at(v));
        std::vector<int> comp = complement_columns(im, dv, p);
        Matrix basis = im;
        Matrix c(dv, static_cast<int>(comp.size()), p);
        for (size_t j = 0; j < comp.size(); ++j) c.at(comp[j], static_cast<int>(j)) = 1;
        basis = Matrix::hcat(basis, c);
        Matrix inv = *inverse(basis);
        std::vector<int> rows;
        for (int r = im.cols(); r < dv; ++r) rows.push_back(r);
        std::vector<int> all(dv);
        std::iota(all.begin(), all.end(), 0);
        proj[v - 1] = inv.submatrix(rows, all);
        lift[v - 1] = c;
        dims[v - 1] = static_cast<int>(comp.size());
    }
    Rep q(n, p, dims);
    for (int v = 1; v < n; ++v) q.arrow(v) = proj[v] * tgt.arrow(v) * lift[v - 1];
    return q;
}

Rep homology(const ModuleMap& f, const ModuleMap& g) {
    auto [k, incl] = kernel_with_inclusion(g);
    ModuleMap into(f.source(), k);
    for (int v = 1; v <= k.rank(); ++v) into.at(v) = solve_columns(incl[v - 1], f.at(v));
    return cokernel(into);
}

IntervalMultiset decompose(const Rep& m) {
    int n = m.rank();
    auto r = [&](int i, int j) -> int {
        if (i < 1 || j > n || i > j) return 0;
        return rank(m.path(i, j));
    };
    IntervalMultiset out;
    for (int a = 1; a <= n; ++a)
        for (int b = a; b <= n; ++b) {
            int mult = r(a, b) - r(a - 1, b) - r(a, b + 1) + r(a - 1, b + 1);
            if (mult < 0) throw Error(ErrorCode::InvariantViolation, "negative interval multiplicity");
            if (mult) out[{a, b}] = mult;
        }
    return out;
}

int euler_form(int n, Interval x, Interval y) {
    auto dimv = [&](Interval iv, int v) { return (iv.a <= v && v <= iv.b) ? 1 : 0; };
    int s = 0;
    for (int v = 1; v <= n; ++v) s += dimv(x, v) * dimv(y, v);
    for (int v = 1; v < n; ++v) s -= dimv(x, v) * dimv(y, v + 1);
    return s;
}

}  // namespace minuscy
