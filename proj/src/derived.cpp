#include "minuscy/derived.hpp"

#include <algorithm>
#include <random>

namespace minuscy {

namespace {

const std::vector<int> kEmptyTerm;

int sign_power(int k) { return (k % 2 == 0) ? 1 : -1; }

Rep projective_sum(int n, int p, const std::vector<int>& labels) {
    if (labels.empty()) return Rep(n, p, std::vector<int>(n, 0));
    std::vector<Rep> parts;
    for (int i : labels) parts.push_back(projective(n, p, i));
    return Rep::direct_sum(parts);
}

// The module map between sums of projectives given by a pattern matrix.
ModuleMap module_map(int n, int p, const std::vector<int>& src, const std::vector<int>& tgt, const Matrix& m) {
    ModuleMap f(projective_sum(n, p, src), projective_sum(n, p, tgt));
    for (int v = 1; v <= n; ++v) {
        int r = 0;
        for (size_t t = 0; t < tgt.size(); ++t) {
            if (tgt[t] > v) continue;
            int c = 0;
            for (size_t s = 0; s < src.size(); ++s) {
                if (src[s] > v) continue;
                f.at(v).at(r, c) = m.at(static_cast<int>(t), static_cast<int>(s));
                ++c;
            }
            ++r;
        }
    }
    return f;
}

// Offsets of each summand's block in degree k of a direct sum of complexes.
std::vector<int> offsets(const std::vector<PComplex>& parts, int k) {
    std::vector<int> off;
    int o = 0;
    for (const PComplex& c : parts) {
        off.push_back(o);
        o += c.size(k);
    }
    off.push_back(o);
    return off;
}

Matrix block(const Matrix& m, int r0, int r1, int c0, int c1) {
    std::vector<int> rows, cols;
    for (int i = r0; i < r1; ++i) rows.push_back(i);
    for (int j = c0; j < c1; ++j) cols.push_back(j);
    return m.submatrix(rows, cols);
}

void put_block(Matrix& m, int r0, int c0, const Matrix& b) {
    for (int i = 0; i < b.rows(); ++i)
        for (int j = 0; j < b.cols(); ++j) m.at(r0 + i, c0 + j) = b.at(i, j);
}

std::pair<int, int> degree_range(const PComplex& x, const PComplex& y) {
    int lo = std::min(x.empty() ? 0 : x.lo(), y.empty() ? 0 : y.lo());
    int hi = std::max(x.empty() ? 0 : x.hi(), y.empty() ? 0 : y.hi());
    return {lo - 1, hi + 1};
}

}  // namespace

std::string Stalk::str() const { return "S^" + std::to_string(shift) + iv.str(); }

DbObject normal_form(DbObject x) {
    std::sort(x.begin(), x.end());
    return x;
}

DbObject shift_object(const DbObject& x, int k) {
    DbObject out;
    for (const Stalk& s : x) out.push_back(s.shifted(k));
    return out;
}

const std::vector<int>& PComplex::term(int k) const {
    auto it = terms.find(k);
    return it == terms.end() ? kEmptyTerm : it->second;
}

Matrix PComplex::d(int k, int p) const {
    auto it = diff.find(k);
    if (it != diff.end()) return it->second;
    return Matrix(size(k + 1), size(k), p);
}

bool PComplex::empty() const {
    for (const auto& [k, t] : terms)
        if (!t.empty()) return false;
    return true;
}

int PComplex::lo() const {
    for (const auto& [k, t] : terms)
        if (!t.empty()) return k;
    return 0;
}

int PComplex::hi() const {
    for (auto it = terms.rbegin(); it != terms.rend(); ++it)
        if (!it->second.empty()) return it->first;
    return 0;
}

Matrix ChainMap::at(int k, int rows, int cols, int p) const {
    auto it = comp.find(k);
    if (it != comp.end()) return it->second;
    return Matrix(rows, cols, p);
}

PComplex shift_complex(const PComplex& x, int k, int p) {
    PComplex out;
    for (const auto& [deg, t] : x.terms)
        if (!t.empty()) out.terms[deg - k] = t;
    for (const auto& [deg, m] : x.diff) out.diff[deg - k] = (k % 2 == 0) ? m : m.scaled(p - 1);
    return out;
}

ChainMap shift_chain_map(const ChainMap& f, int k) {
    ChainMap out;
    for (const auto& [deg, m] : f.comp) out.comp[deg - k] = m;
    return out;
}

ChainMap compose_chain(const ChainMap& g, const ChainMap& f, const PComplex& x, const PComplex& y,
                       const PComplex& z, int p) {
    ChainMap out;
    for (const auto& [k, t] : x.terms) {
        if (t.empty() || z.size(k) == 0) continue;
        Matrix m = g.at(k, z.size(k), y.size(k), p) * f.at(k, y.size(k), x.size(k), p);
        if (!m.is_zero()) out.comp[k] = m;
    }
    return out;
}

bool is_chain_map(const ChainMap& f, const PComplex& x, const PComplex& y, int p) {
    auto [lo, hi] = degree_range(x, y);
    for (int k = lo; k <= hi; ++k) {
        Matrix lhs = y.d(k, p) * f.at(k, y.size(k), x.size(k), p);
        Matrix rhs = f.at(k + 1, y.size(k + 1), x.size(k + 1), p) * x.d(k, p);
        if (lhs != rhs) return false;
    }
    return true;
}

PComplex direct_sum(const std::vector<PComplex>& parts, int p) {
    PComplex out;
    std::map<int, int> present;
    for (const PComplex& c : parts)
        for (const auto& [k, t] : c.terms)
            if (!t.empty()) present[k] = 1;
    for (const auto& [k, unused] : present) {
        std::vector<int> labels;
        for (const PComplex& c : parts)
            for (int l : c.term(k)) labels.push_back(l);
        out.terms[k] = labels;
    }
    for (const auto& [k, unused] : present) {
        if (!present.count(k + 1)) continue;
        auto src = offsets(parts, k), tgt = offsets(parts, k + 1);
        Matrix d(tgt.back(), src.back(), p);
        for (size_t i = 0; i < parts.size(); ++i) put_block(d, tgt[i], src[i], parts[i].d(k, p));
        out.diff[k] = d;
    }
    return out;
}

KHom::KHom(const PComplex& x, const PComplex& y, int p) : x_(x), y_(y), p_(p) {
    auto [lo, hi] = degree_range(x, y);
    for (int k = lo; k <= hi; ++k)
        for (int t = 0; t < y.size(k); ++t)
            for (int s = 0; s < x.size(k); ++s)
                if (y.term(k)[t] <= x.term(k)[s]) {
                    index_[{k, t, s}] = static_cast<int>(slots_.size());
                    slots_.push_back({k, t, s});
                }
    int nv = static_cast<int>(slots_.size());
    if (nv == 0) return;
    Fp f{p};

    // Chain condition d_Y f^k - f^{k+1} d_X = 0.
    std::vector<std::vector<int>> eqs;
    for (int k = lo; k <= hi; ++k) {
        Matrix dy = y.d(k, p), dx = x.d(k, p);
        for (int i = 0; i < y.size(k + 1); ++i)
            for (int j = 0; j < x.size(k); ++j) {
                std::vector<int> row(nv, 0);
                bool any = false;
                for (int t = 0; t < y.size(k); ++t) {
                    if (!dy.at(i, t)) continue;
                    auto it = index_.find({k, t, j});
                    if (it == index_.end()) continue;
                    row[it->second] = f.add(row[it->second], dy.at(i, t));
                    any = true;
                }
                for (int s = 0; s < x.size(k + 1); ++s) {
                    if (!dx.at(s, j)) continue;
                    auto it = index_.find({k + 1, i, s});
                    if (it == index_.end()) continue;
                    row[it->second] = f.sub(row[it->second], dx.at(s, j));
                    any = true;
                }
                if (any) eqs.push_back(row);
            }
    }
    Matrix sys(static_cast<int>(eqs.size()), nv, p);
    for (size_t r = 0; r < eqs.size(); ++r)
        for (int c = 0; c < nv; ++c) sys.at(static_cast<int>(r), c) = eqs[r][c];
    Matrix ker = eqs.empty() ? Matrix::identity(nv, p) : kernel_basis(sys);

    // Null-homotopic maps d_Y s^k + s^{k+1} d_X from unit homotopies s^k : X^k -> Y^{k-1}.
    std::vector<std::vector<int>> himg;
    for (int k = lo; k <= hi + 1; ++k)
        for (int t = 0; t < y.size(k - 1); ++t)
            for (int s = 0; s < x.size(k); ++s) {
                if (y.term(k - 1)[t] > x.term(k)[s]) continue;
                Matrix e(y.size(k - 1), x.size(k), p);
                e.at(t, s) = 1;
                ChainMap h;
                h.comp[k] = y.d(k - 1, p) * e;
                if (x.size(k - 1)) h.comp[k - 1] = e * x.d(k - 1, p);
                himg.push_back(flatten(h));
            }
    if (!himg.empty()) {
        Matrix hm(static_cast<int>(himg.size()), nv, p);
        for (size_t r = 0; r < himg.size(); ++r)
            for (int c = 0; c < nv; ++c) hm.at(static_cast<int>(r), c) = himg[r][c];
        Echelon e = row_echelon(hm);
        for (size_t r = 0; r < e.pivots.size(); ++r) {
            std::vector<int> row(nv);
            for (int c = 0; c < nv; ++c) row[c] = e.rref.at(static_cast<int>(r), c);
            hrows_.push_back(row);
            hpiv_.push_back(e.pivots[r]);
        }
    }
    if (ker.cols() == 0) return;
    Matrix red(ker.cols(), nv, p);
    for (int j = 0; j < ker.cols(); ++j) {
        std::vector<int> v(nv);
        for (int i = 0; i < nv; ++i) v[i] = ker.at(i, j);
        v = reduce(v);
        for (int i = 0; i < nv; ++i) red.at(j, i) = v[i];
    }
    Echelon e = row_echelon(red);
    for (size_t r = 0; r < e.pivots.size(); ++r) {
        std::vector<int> row(nv);
        for (int c = 0; c < nv; ++c) row[c] = e.rref.at(static_cast<int>(r), c);
        basis_.push_back(row);
        bpiv_.push_back(e.pivots[r]);
    }
}

std::vector<int> KHom::flatten(const ChainMap& f) const {
    std::vector<int> v(slots_.size(), 0);
    for (const auto& [k, m] : f.comp)
        for (int i = 0; i < m.rows(); ++i)
            for (int j = 0; j < m.cols(); ++j) {
                if (!m.at(i, j)) continue;
                auto it = index_.find({k, i, j});
                if (it == index_.end())
                    throw Error(ErrorCode::InvariantViolation, "chain map entry outside the projective pattern");
                v[it->second] = m.at(i, j);
            }
    return v;
}

ChainMap KHom::to_chain(const std::vector<int>& v) const {
    ChainMap f;
    for (size_t i = 0; i < slots_.size(); ++i) {
        if (!v[i]) continue;
        const Slot& s = slots_[i];
        auto it = f.comp.find(s.degree);
        if (it == f.comp.end())
            it = f.comp.emplace(s.degree, Matrix(y_.size(s.degree), x_.size(s.degree), p_)).first;
        it->second.at(s.row, s.col) = v[i];
    }
    return f;
}

std::vector<int> KHom::reduce(std::vector<int> v) const {
    Fp f{p_};
    for (size_t r = 0; r < hrows_.size(); ++r) {
        int c = v[hpiv_[r]];
        if (!c) continue;
        for (size_t i = 0; i < v.size(); ++i)
            if (hrows_[r][i]) v[i] = f.sub(v[i], f.mul(c, hrows_[r][i]));
    }
    return v;
}

std::vector<int> KHom::coords(const ChainMap& fmap) const {
    if (slots_.empty()) return {};
    std::vector<int> v = reduce(flatten(fmap));
    Fp f{p_};
    std::vector<int> c(basis_.size());
    for (size_t j = 0; j < basis_.size(); ++j) {
        c[j] = v[bpiv_[j]];
        if (!c[j]) continue;
        for (size_t i = 0; i < v.size(); ++i)
            if (basis_[j][i]) v[i] = f.sub(v[i], f.mul(c[j], basis_[j][i]));
    }
    for (int e : v)
        if (e) throw Error(ErrorCode::InvariantViolation, "coordinates requested for a non-chain map");
    return c;
}

bool KHom::null_homotopic(const ChainMap& f) const {
    for (int c : coords(f))
        if (c) return false;
    return true;
}

DbMorphism DbMorphism::zero(DbObject src, DbObject tgt) {
    DbMorphism m{std::move(src), std::move(tgt), {}};
    m.coef.assign(m.tgt.size(), std::vector<int>(m.src.size(), 0));
    return m;
}

DbEngine::DbEngine(int n, int p) : n_(n), p_(p) {
    if (n < 1) throw Error(ErrorCode::Dimension, "rank must be at least 1");
    if (!is_prime(p)) throw Error(ErrorCode::NotPrime, std::to_string(p) + " is not prime");
}

PComplex DbEngine::canonical(const Stalk& s) const {
    const Interval& iv = s.iv;
    if (iv.a < 1 || iv.a > iv.b || iv.b > n_) throw Error(ErrorCode::Dimension, "invalid interval " + iv.str());
    PComplex c;
    c.terms[-s.shift] = {iv.a};
    if (iv.b < n_) {
        c.terms[-s.shift - 1] = {iv.b + 1};
        Matrix d(1, 1, p_);
        d.set(0, 0, sign_power(s.shift));
        c.diff[-s.shift - 1] = d;
    }
    return c;
}

PComplex DbEngine::canonical(const DbObject& x) const {
    std::vector<PComplex> parts;
    for (const Stalk& s : x) parts.push_back(canonical(s));
    return direct_sum(parts, p_);
}

const DbEngine::PairData& DbEngine::pair(const Interval& a, int r, const Interval& b) const {
    std::lock_guard lock(mu_);
    auto key = std::make_tuple(a, r, b);
    auto it = pairs_.find(key);
    if (it != pairs_.end()) return it->second;
    PairData d;
    KHom h(canonical(Stalk{0, a}), canonical(Stalk{r, b}), p_);
    if (h.dim() > 1) throw Error(ErrorCode::InvariantViolation, "stalk Hom of dimension > 1");
    if (h.dim() == 1) d.basis = h.basis(0);
    d.hom = std::move(h);
    return pairs_.emplace(key, std::move(d)).first->second;
}

std::optional<int> DbEngine::hom_degree(const Stalk& a, const Stalk& b) const {
    int r = b.shift - a.shift;
    if (r != 0 && r != 1) return std::nullopt;
    if (!pair(a.iv, r, b.iv).basis) return std::nullopt;
    return r;
}

ChainMap DbEngine::basis_chain(const Stalk& a, const Stalk& b) const {
    int r = b.shift - a.shift;
    if (r != 0 && r != 1) throw Error(ErrorCode::Dimension, "no Hom between " + a.str() + " and " + b.str());
    const PairData& d = pair(a.iv, r, b.iv);
    if (!d.basis) throw Error(ErrorCode::Dimension, "no Hom between " + a.str() + " and " + b.str());
    return shift_chain_map(*d.basis, a.shift);
}

int DbEngine::coefficient(const Stalk& a, const Stalk& b, const ChainMap& f) const {
    int r = b.shift - a.shift;
    ChainMap g = shift_chain_map(f, -a.shift);
    if (r != 0 && r != 1) {
        KHom h(canonical(a.shifted(-a.shift)), canonical(b.shifted(-a.shift)), p_);
        if (h.dim() != 0 || !h.null_homotopic(g))
            throw Error(ErrorCode::InvariantViolation, "nonzero map outside degrees 0 and 1");
        return 0;
    }
    const PairData& d = pair(a.iv, r, b.iv);
    auto c = d.hom->coords(g);
    return c.empty() ? 0 : c[0];
}

int DbEngine::compose_constant(const Stalk& a, const Stalk& b, const Stalk& c) const {
    int rb = b.shift - a.shift, rc = c.shift - a.shift;
    if (rb < 0 || rb > 1 || rc - rb < 0 || rc - rb > 1 || rc > 1) return 0;
    auto key = std::make_tuple(a.iv, rb, b.iv, rc, c.iv);
    {
        std::lock_guard lock(mu_);
        auto it = compose_cache_.find(key);
        if (it != compose_cache_.end()) return it->second;
    }
    Stalk a0{0, a.iv}, b0{rb, b.iv}, c0{rc, c.iv};
    int out = 0;
    if (has_hom(a0, b0) && has_hom(b0, c0) && has_hom(a0, c0)) {
        ChainMap m = compose_chain(basis_chain(b0, c0), basis_chain(a0, b0), canonical(a0), canonical(b0),
                                   canonical(c0), p_);
        out = coefficient(a0, c0, m);
    }
    std::lock_guard lock(mu_);
    compose_cache_[key] = out;
    return out;
}

DbMorphism DbEngine::identity(const DbObject& x) const {
    DbMorphism m = DbMorphism::zero(x, x);
    for (size_t i = 0; i < x.size(); ++i) m.coef[i][i] = 1;
    return m;
}

DbMorphism DbEngine::compose(const DbMorphism& g, const DbMorphism& f) const {
    if (g.src != f.tgt) throw Error(ErrorCode::Dimension, "composition of non-composable morphisms");
    DbMorphism out = DbMorphism::zero(f.src, g.tgt);
    Fp fp{p_};
    for (size_t u = 0; u < g.tgt.size(); ++u)
        for (size_t s = 0; s < f.src.size(); ++s) {
            int acc = 0;
            for (size_t t = 0; t < f.tgt.size(); ++t) {
                if (!g.coef[u][t] || !f.coef[t][s]) continue;
                int c = compose_constant(f.src[s], f.tgt[t], g.tgt[u]);
                if (c) acc = fp.add(acc, fp.mul(fp.mul(g.coef[u][t], f.coef[t][s]), c));
            }
            out.coef[u][s] = acc;
        }
    return out;
}

DbMorphism DbEngine::shift(const DbMorphism& f, int k) const {
    DbMorphism out = f;
    out.src = shift_object(f.src, k);
    out.tgt = shift_object(f.tgt, k);
    return out;
}

ChainMap DbEngine::chain_map(const DbMorphism& f) const {
    std::vector<PComplex> xs, ys;
    for (const Stalk& s : f.src) xs.push_back(canonical(s));
    for (const Stalk& t : f.tgt) ys.push_back(canonical(t));
    std::map<int, int> degrees;
    for (const PComplex& c : xs)
        for (const auto& [k, t] : c.terms) degrees[k] = 1;
    ChainMap out;
    for (const auto& [k, unused] : degrees) {
        auto so = offsets(xs, k), to = offsets(ys, k);
        if (to.back() == 0 || so.back() == 0) continue;
        Matrix m(to.back(), so.back(), p_);
        for (size_t t = 0; t < f.tgt.size(); ++t)
            for (size_t s = 0; s < f.src.size(); ++s) {
                if (!f.coef[t][s]) continue;
                if (!has_hom(f.src[s], f.tgt[t]))
                    throw Error(ErrorCode::InvariantViolation, "coefficient on a zero Hom space");
                ChainMap b = basis_chain(f.src[s], f.tgt[t]);
                auto it = b.comp.find(k);
                if (it == b.comp.end()) continue;
                put_block(m, to[t], so[s], it->second.scaled(f.coef[t][s]));
            }
        out.comp[k] = m;
    }
    return out;
}

DbMorphism DbEngine::from_chain(const DbObject& x, const DbObject& y, const ChainMap& f) const {
    DbMorphism out = DbMorphism::zero(x, y);
    std::vector<PComplex> xs, ys;
    for (const Stalk& s : x) xs.push_back(canonical(s));
    for (const Stalk& t : y) ys.push_back(canonical(t));
    for (size_t t = 0; t < y.size(); ++t)
        for (size_t s = 0; s < x.size(); ++s) {
            if (!has_hom(x[s], y[t])) continue;
            ChainMap part;
            for (const auto& [k, m] : f.comp) {
                auto so = offsets(xs, k), to = offsets(ys, k);
                if (xs[s].size(k) == 0 || ys[t].size(k) == 0) continue;
                part.comp[k] = block(m, to[t], to[t + 1], so[s], so[s + 1]);
            }
            out.coef[t][s] = coefficient(x[s], y[t], part);
        }
    return out;
}

DbObject DbEngine::decompose(const PComplex& c) const {
    DbObject out;
    if (c.empty()) return out;
    for (int k = c.lo(); k <= c.hi(); ++k) {
        if (c.size(k) == 0) continue;
        ModuleMap in = module_map(n_, p_, c.term(k - 1), c.term(k), c.d(k - 1, p_));
        ModuleMap outm = module_map(n_, p_, c.term(k), c.term(k + 1), c.d(k, p_));
        for (const auto& [iv, mult] : minuscy::decompose(homology(in, outm)))
            for (int i = 0; i < mult; ++i) out.push_back(Stalk{-k, iv});
    }
    return normal_form(out);
}

DbEngine::Normalization DbEngine::normalize(const PComplex& c) const {
    Normalization out;
    out.object = decompose(c);
    const DbObject& obj = out.object;
    if (obj.empty()) return out;
    PComplex can = canonical(obj);
    std::vector<PComplex> parts;
    for (const Stalk& s : obj) parts.push_back(canonical(s));

    std::map<Stalk, KHom> into, outof;
    for (const Stalk& s : obj) {
        if (into.count(s)) continue;
        into.emplace(s, KHom(canonical(s), c, p_));
        outof.emplace(s, KHom(c, canonical(s), p_));
    }
    std::mt19937 rng(0x5eed);
    Fp f{p_};
    for (int attempt = 0; attempt < 64; ++attempt) {
        // Random iota component for each summand.
        std::vector<ChainMap> iota(obj.size());
        for (size_t j = 0; j < obj.size(); ++j) {
            const KHom& h = into.at(obj[j]);
            ChainMap m;
            for (int r = 0; r < h.dim(); ++r) {
                int coef = static_cast<int>(rng() % static_cast<unsigned>(p_));
                if (!coef) continue;
                for (const auto& [k, mat] : h.basis(r).comp) {
                    auto it = m.comp.find(k);
                    if (it == m.comp.end()) m.comp.emplace(k, mat.scaled(coef));
                    else it->second = it->second + mat.scaled(coef);
                }
            }
            iota[j] = m;
        }
        // Solve rho_j' o iota_j = delta for each row block j'.
        std::vector<ChainMap> rho(obj.size());
        bool ok = true;
        for (size_t jp = 0; jp < obj.size() && ok; ++jp) {
            const KHom& h = outof.at(obj[jp]);
            std::vector<std::vector<int>> rows;
            std::vector<int> rhs;
            for (size_t j = 0; j < obj.size(); ++j) {
                if (!has_hom(obj[j], obj[jp])) continue;
                std::vector<int> row(h.dim());
                for (int r = 0; r < h.dim(); ++r) {
                    ChainMap comp = compose_chain(h.basis(r), iota[j], parts[j], c, parts[jp], p_);
                    row[r] = coefficient(obj[j], obj[jp], comp);
                }
                rows.push_back(row);
                rhs.push_back(j == jp ? 1 : 0);
            }
            Matrix sys(static_cast<int>(rows.size()), h.dim(), p_);
            for (size_t i = 0; i < rows.size(); ++i)
                for (int r = 0; r < h.dim(); ++r) sys.at(static_cast<int>(i), r) = rows[i][r];
            auto sol = solve(sys, rhs);
            if (!sol) {
                ok = false;
                break;
            }
            ChainMap m;
            for (int r = 0; r < h.dim(); ++r) {
                if (!(*sol)[r]) continue;
                for (const auto& [k, mat] : h.basis(r).comp) {
                    auto it = m.comp.find(k);
                    if (it == m.comp.end()) m.comp.emplace(k, mat.scaled((*sol)[r]));
                    else it->second = it->second + mat.scaled((*sol)[r]);
                }
            }
            rho[jp] = m;
        }
        if (!ok) continue;
        // Assemble block maps.
        for (int k = can.empty() ? 0 : can.lo(); k <= (can.empty() ? -1 : can.hi()); ++k) {
            auto off = offsets(parts, k);
            if (off.back() == 0 || c.size(k) == 0) continue;
            Matrix im(c.size(k), off.back(), p_), rm(off.back(), c.size(k), p_);
            for (size_t j = 0; j < obj.size(); ++j) {
                if (parts[j].size(k) == 0) continue;
                put_block(im, 0, off[j], iota[j].at(k, c.size(k), parts[j].size(k), p_));
                put_block(rm, off[j], 0, rho[j].at(k, parts[j].size(k), c.size(k), p_));
            }
            out.iota.comp[k] = im;
            out.rho.comp[k] = rm;
        }
        (void)f;
        return out;
    }
    throw Error(ErrorCode::InvariantViolation, "no isomorphism onto the homology normal form was found");
}

DbTriangle DbEngine::cone(const DbMorphism& f) const {
    PComplex x = canonical(f.src), y = canonical(f.tgt);
    ChainMap phi = chain_map(f);
    PComplex c;
    std::map<int, int> degrees;
    for (const auto& [k, t] : y.terms)
        if (!t.empty()) degrees[k] = 1;
    for (const auto& [k, t] : x.terms)
        if (!t.empty()) degrees[k - 1] = 1;
    for (const auto& [k, unused] : degrees) {
        std::vector<int> labels = y.term(k);
        for (int l : x.term(k + 1)) labels.push_back(l);
        c.terms[k] = labels;
    }
    for (const auto& [k, unused] : degrees) {
        if (!degrees.count(k + 1)) continue;
        int ys0 = y.size(k), xs0 = x.size(k + 1), ys1 = y.size(k + 1), xs1 = x.size(k + 2);
        Matrix d(ys1 + xs1, ys0 + xs0, p_);
        put_block(d, 0, 0, y.d(k, p_));
        put_block(d, 0, ys0, phi.at(k + 1, ys1, xs0, p_));
        put_block(d, ys1, ys0, x.d(k + 1, p_).scaled(p_ - 1));
        c.diff[k] = d;
    }
    Normalization norm = normalize(c);
    PComplex can = canonical(norm.object);
    PComplex sx = shift_complex(x, 1, p_);

    ChainMap incl, proj;
    for (const auto& [k, unused] : degrees) {
        int ys = y.size(k), xs = x.size(k + 1);
        if (ys) {
            Matrix m(ys + xs, ys, p_);
            put_block(m, 0, 0, Matrix::identity(ys, p_));
            incl.comp[k] = m;
        }
        if (xs) {
            Matrix m(xs, ys + xs, p_);
            put_block(m, 0, ys, Matrix::identity(xs, p_));
            proj.comp[k] = m;
        }
    }
    DbTriangle tri;
    tri.x = f.src;
    tri.y = f.tgt;
    tri.c = norm.object;
    tri.f = f;
    tri.g = from_chain(f.tgt, norm.object, compose_chain(norm.rho, incl, y, c, can, p_));
    tri.h = from_chain(norm.object, shift_object(f.src, 1), compose_chain(proj, norm.iota, can, c, sx, p_));
    return tri;
}

PComplex DbEngine::serre_complex(const PComplex& x) const {
    // Total complex of the double complex with columns ν(P(i)) = [P(i+1) -> P(1)].
    PComplex out;
    if (x.empty()) return out;
    auto lower = [&](int k) {
        std::vector<int> idx;
        for (int s = 0; s < x.size(k); ++s)
            if (x.term(k)[s] < n_) idx.push_back(s);
        return idx;
    };
    for (int m = x.lo() - 1; m <= x.hi(); ++m) {
        std::vector<int> labels(x.size(m), 1);
        for (int s : lower(m + 1)) labels.push_back(x.term(m + 1)[s] + 1);
        if (!labels.empty()) out.terms[m] = labels;
    }
    for (int m = x.lo() - 1; m <= x.hi(); ++m) {
        int top0 = x.size(m), top1 = x.size(m + 1);
        auto low0 = lower(m + 1), low1 = lower(m + 2);
        int rows = top1 + static_cast<int>(low1.size()), cols = top0 + static_cast<int>(low0.size());
        if (!rows || !cols) continue;
        Matrix d(rows, cols, p_);
        put_block(d, 0, 0, x.d(m, p_));
        int vs = sign_power(m + 1);
        for (size_t j = 0; j < low0.size(); ++j) d.set(low0[j], top0 + static_cast<int>(j), vs);
        Matrix dh = x.d(m + 1, p_);
        for (size_t i = 0; i < low1.size(); ++i)
            for (size_t j = 0; j < low0.size(); ++j)
                d.at(top1 + static_cast<int>(i), top0 + static_cast<int>(j)) = dh.at(low1[i], low0[j]);
        out.diff[m] = d;
    }
    return out;
}

ChainMap DbEngine::serre_chain(const ChainMap& f, const PComplex& x, const PComplex& y) const {
    ChainMap out;
    PComplex sx = serre_complex(x), sy = serre_complex(y);
    auto lower = [&](const PComplex& c, int k) {
        std::vector<int> idx;
        for (int s = 0; s < c.size(k); ++s)
            if (c.term(k)[s] < n_) idx.push_back(s);
        return idx;
    };
    for (const auto& [m, t] : sx.terms) {
        if (sy.size(m) == 0) continue;
        Matrix g(sy.size(m), sx.size(m), p_);
        put_block(g, 0, 0, f.at(m, y.size(m), x.size(m), p_));
        auto lx = lower(x, m + 1), ly = lower(y, m + 1);
        Matrix f1 = f.at(m + 1, y.size(m + 1), x.size(m + 1), p_);
        for (size_t i = 0; i < ly.size(); ++i)
            for (size_t j = 0; j < lx.size(); ++j)
                g.at(y.size(m) + static_cast<int>(i), x.size(m) + static_cast<int>(j)) = f1.at(ly[i], lx[j]);
        out.comp[m] = g;
    }
    return out;
}

const DbEngine::SerreData& DbEngine::serre_data(const Interval& a) const {
    std::lock_guard lock(mu_);
    auto it = serre_cache_.find(a);
    if (it != serre_cache_.end()) return it->second;
    PComplex t = serre_complex(canonical(Stalk{0, a}));
    Normalization norm = normalize(t);
    if (norm.object.size() != 1)
        throw Error(ErrorCode::InvariantViolation, "Serre image of an indecomposable is not a single stalk");
    SerreData d{norm.object[0], norm.iota, norm.rho};
    return serre_cache_.emplace(a, std::move(d)).first->second;
}

Stalk DbEngine::serre(const Stalk& s) const { return serre_data(s.iv).image.shifted(s.shift); }

Stalk DbEngine::serre_inverse(const Stalk& s) const {
    for (int a = 1; a <= n_; ++a)
        for (int b = a; b <= n_; ++b) {
            const Stalk& img = serre_data(Interval{a, b}).image;
            if (img.iv == s.iv) return Stalk{s.shift - img.shift, Interval{a, b}};
        }
    throw Error(ErrorCode::InvariantViolation, "Serre functor is not a bijection on stalks");
}

int DbEngine::serre_scalar(const Stalk& a, const Stalk& b) const {
    int r = b.shift - a.shift;
    auto key = std::make_tuple(a.iv, r, b.iv);
    {
        std::lock_guard lock(mu_);
        auto it = serre_scalar_cache_.find(key);
        if (it != serre_scalar_cache_.end()) return it->second;
    }
    Stalk a0{0, a.iv}, b0{r, b.iv};
    PComplex x = canonical(a0), y = canonical(b0);
    ChainMap sb = serre_chain(basis_chain(a0, b0), x, y);
    const SerreData& da = serre_data(a.iv);
    const SerreData& db = serre_data(b.iv);
    Stalk sa = da.image, sbk = db.image.shifted(r);
    PComplex tx = serre_complex(x), ty = serre_complex(y);
    ChainMap rho_b = shift_chain_map(db.rho, r);
    ChainMap m = compose_chain(sb, da.iota, canonical(sa), tx, ty, p_);
    m = compose_chain(rho_b, m, canonical(sa), ty, canonical(sbk), p_);
    int lambda = coefficient(sa, sbk, m);
    if (!lambda) throw Error(ErrorCode::InvariantViolation, "Serre functor killed a basis morphism");
    std::lock_guard lock(mu_);
    serre_scalar_cache_[key] = lambda;
    return lambda;
}

DbMorphism DbEngine::serre(const DbMorphism& f) const {
    DbMorphism out = f;
    out.src = serre(f.src);
    out.tgt = serre(f.tgt);
    Fp fp{p_};
    for (size_t t = 0; t < f.tgt.size(); ++t)
        for (size_t s = 0; s < f.src.size(); ++s)
            if (f.coef[t][s]) out.coef[t][s] = fp.mul(f.coef[t][s], serre_scalar(f.src[s], f.tgt[t]));
    return out;
}

DbMorphism DbEngine::tau(const DbMorphism& f) const { return shift(serre(f), -1); }

DbObject DbEngine::serre(const DbObject& x) const {
    DbObject out;
    for (const Stalk& s : x) out.push_back(serre(s));
    return out;
}

DbObject DbEngine::tau(const DbObject& x) const { return shift_object(serre(x), -1); }

}  // namespace minuscy
