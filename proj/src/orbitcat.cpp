#include "minuscy/orbitcat.hpp"

#include <algorithm>
#include <cstdio>
#include <deque>
#include <set>
#include <sstream>

#include "json.hpp"

namespace minuscy {

namespace {

// Large primes used to certify Cartan invertibility and to solve fingerprints.
constexpr int kCertPrimeA = 1000000007;
constexpr int kCertPrimeB = 998244353;

long long pair_key(int a, int b) { return (static_cast<long long>(a) << 32) | static_cast<unsigned>(b); }

bool stalk_less_for_rep(const Stalk& a, const Stalk& b) {
    auto key = [](const Stalk& s) { return std::make_tuple(std::abs(s.shift), s.shift, s.iv.a, s.iv.b); };
    return key(a) < key(b);
}

std::string fnv1a64(const std::string& s) {
    unsigned long long h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", h);
    return buf;
}

bool cartan_invertible(const std::vector<std::vector<int>>& c, int prime) {
    int n = static_cast<int>(c.size());
    Matrix m(n, n, prime);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m.set(i, j, c[i][j]);
    return rank(m) == n;
}

}  // namespace

bool OrbitMorphism::is_zero() const {
    for (const auto& row : coef)
        for (const auto& cell : row)
            for (int v : cell)
                if (v) return false;
    return true;
}

ObjectVector to_vector(const OrbitCategory& c, const std::vector<int>& summands) {
    ObjectVector v(c.size(), 0);
    for (int x : summands) ++v[x];
    return v;
}

std::vector<int> to_summands(const ObjectVector& v) {
    std::vector<int> out;
    for (size_t x = 0; x < v.size(); ++x)
        for (int i = 0; i < v[x]; ++i) out.push_back(static_cast<int>(x));
    return out;
}

std::string format_object(const OrbitCategory& c, const ObjectVector& v) {
    std::string out;
    for (size_t x = 0; x < v.size(); ++x) {
        if (!v[x]) continue;
        if (!out.empty()) out += " + ";
        if (v[x] > 1) out += std::to_string(v[x]) + "*";
        out += c.name(static_cast<int>(x));
    }
    return out.empty() ? "0" : out;
}

Stalk OrbitCategory::apply_f(const Stalk& s, int k) const {
    Stalk t = s;
    for (; k > 0; --k) t = engine_->serre(t).shifted(w_);
    for (; k < 0; ++k) t = engine_->serre_inverse(t.shifted(-w_));
    return t;
}

std::pair<int, int> OrbitCategory::locate(const Stalk& s) const {
    Stalk t = s;
    int pow = 0;
    while (t.shift > window_bound_) {
        t = apply_f(t, -1);
        ++pow;
    }
    while (t.shift < -window_bound_) {
        t = apply_f(t, 1);
        --pow;
    }
    auto it = window_.find(t);
    if (it == window_.end()) throw Error(ErrorCode::WindowUncertified, "stalk " + s.str() + " outside the orbit window");
    return {it->second.first, it->second.second + pow};
}

// F = Σ^w S with the naive action commutes with Σ only up to (-1)^w as a
// triangle functor. Twisting basis(u, v) by (-1)^{w(shift u + shift v)} gives
// an isomorphic functor whose comparison with Σ is the identity, so images of
// triangles of D^b stay distinguished after translating a lift by F.
int OrbitCategory::twisted_scalar(const Stalk& u, const Stalk& v) const {
    int lam = engine_->serre_scalar(u, v);
    if ((static_cast<long>(w_) * (u.shift + v.shift)) % 2 != 0) lam = Fp{p_}.neg(lam);
    return lam;
}

int OrbitCategory::lambda_power(int a, const Stalk& u, const Stalk& v) const {
    Fp f{p_};
    int out = 1;
    if (a > 0) {
        Stalk uu = u, vv = v;
        for (int k = 0; k < a; ++k) {
            out = f.mul(out, twisted_scalar(uu, vv));
            uu = apply_f(uu, 1);
            vv = apply_f(vv, 1);
        }
    } else if (a < 0) {
        Stalk uu = u, vv = v;
        for (int k = 0; k < -a; ++k) {
            uu = apply_f(uu, -1);
            vv = apply_f(vv, -1);
            out = f.mul(out, f.inv(twisted_scalar(uu, vv)));
        }
    }
    return out;
}

int OrbitCategory::basis_index(int x, int y, int degree) const {
    const auto& b = hom_[x][y];
    for (size_t k = 0; k < b.size(); ++k)
        if (b[k].degree == degree) return static_cast<int>(k);
    return -1;
}

OrbitCategory OrbitCategory::build(int n, int w, int p) {
    if (w < 1) throw Error(ErrorCode::Dimension, "CY weight must be at least 1");
    OrbitCategory c;
    c.n_ = n;
    c.w_ = w;
    c.p_ = p;
    c.engine_ = std::make_shared<DbEngine>(n, p);
    // Certificate: F raises the shift of every stalk, so orbit degrees are
    // ordered by shift and windows can be scanned monotonically.
    for (int a = 1; a <= n; ++a)
        for (int b = a; b <= n; ++b) {
            Stalk s{0, {a, b}};
            if (c.apply_f(s, 1).shift < 1)
                throw Error(ErrorCode::WindowUncertified, "F does not raise the shift of " + s.str());
        }
    c.window_bound_ = (w + 1) * (n + 1) + 2;
    int wb = c.window_bound_;

    // Orbits of stalks inside the window.
    std::map<Stalk, int> seen;
    std::vector<std::vector<std::pair<Stalk, int>>> orbits;  // members with power relative to the lowest
    for (int s = -wb; s <= wb; ++s)
        for (int a = 1; a <= n; ++a)
            for (int b = a; b <= n; ++b) {
                Stalk st{s, {a, b}};
                if (seen.count(st)) continue;
                Stalk t = st;
                while (true) {
                    Stalk u = c.apply_f(t, -1);
                    if (u.shift < -wb) break;
                    t = u;
                }
                std::vector<std::pair<Stalk, int>> members;
                for (int k = 0; t.shift <= wb; ++k) {
                    members.push_back({t, k});
                    seen[t] = 1;
                    t = c.apply_f(t, 1);
                }
                orbits.push_back(members);
            }
    std::vector<std::pair<Stalk, size_t>> reps;
    for (size_t o = 0; o < orbits.size(); ++o) {
        Stalk best = orbits[o][0].first;
        for (const auto& [m, k] : orbits[o])
            if (stalk_less_for_rep(m, best)) best = m;
        reps.push_back({best, o});
    }
    std::sort(reps.begin(), reps.end(),
              [](const auto& a, const auto& b) { return stalk_less_for_rep(a.first, b.first); });
    for (size_t id = 0; id < reps.size(); ++id) {
        c.reps_.push_back(reps[id].first);
        const auto& members = orbits[reps[id].second];
        int base = 0;
        for (const auto& [m, k] : members)
            if (m == reps[id].first) base = k;
        for (const auto& [m, k] : members) c.window_[m] = {static_cast<int>(id), k - base};
    }
    int N = c.size();

    // Hom bases by scanning orbit degrees in shift order.
    c.hom_.assign(N, std::vector<std::vector<HomBasisElem>>(N));
    for (int x = 0; x < N; ++x)
        for (int y = 0; y < N; ++y) {
            const Stalk& X = c.reps_[x];
            Stalk V = c.reps_[y];
            int i = 0;
            while (V.shift >= X.shift) {
                V = c.apply_f(V, -1);
                --i;
            }
            while (V.shift < X.shift) {
                V = c.apply_f(V, 1);
                ++i;
            }
            while (V.shift <= X.shift + 1) {
                if (auto r = c.engine_->hom_degree(X, V)) c.hom_[x][y].push_back({i, *r});
                V = c.apply_f(V, 1);
                ++i;
            }
        }
    c.cartan_.assign(N, std::vector<int>(N, 0));
    for (int x = 0; x < N; ++x)
        for (int y = 0; y < N; ++y) c.cartan_[x][y] = c.hom_dim(x, y);

    // Permutations.
    c.sigma_.resize(N);
    c.sigma_inv_.resize(N);
    c.sigma_pow_.resize(N);
    c.tau_.resize(N);
    c.tau_inv_.resize(N);
    c.serre_.resize(N);
    c.serre_inv_.resize(N);
    for (int x = 0; x < N; ++x) {
        auto [sx, pw] = c.locate(c.reps_[x].shifted(1));
        c.sigma_[x] = sx;
        c.sigma_pow_[x] = pw;
        c.sigma_inv_[sx] = x;
        int t = c.locate(c.engine_->tau(c.reps_[x])).first;
        c.tau_[x] = t;
        c.tau_inv_[t] = x;
        int s = c.locate(c.engine_->serre(c.reps_[x])).first;
        c.serre_[x] = s;
        c.serre_inv_[s] = x;
    }
    c.cartan_certified_ = cartan_invertible(c.cartan_, kCertPrimeA) || cartan_invertible(c.cartan_, kCertPrimeB);
    c.build_composition();
    c.build_shift_basis();
    c.validate();
    return c;
}

void OrbitCategory::build_composition() {
    int N = size();
    basis_offset_.assign(N, std::vector<int>(N, 0));
    global_.clear();
    for (int x = 0; x < N; ++x)
        for (int y = 0; y < N; ++y) {
            basis_offset_[x][y] = static_cast<int>(global_.size());
            for (int k = 0; k < hom_dim(x, y); ++k) global_.push_back({x, y, k});
        }
    compose_.clear();
    Fp f{p_};
    for (int x = 0; x < N; ++x)
        for (int y = 0; y < N; ++y) {
            if (hom_[x][y].empty()) continue;
            for (int z = 0; z < N; ++z) {
                if (hom_[y][z].empty() || hom_[x][z].empty()) continue;
                for (size_t k1 = 0; k1 < hom_[x][y].size(); ++k1)
                    for (size_t k2 = 0; k2 < hom_[y][z].size(); ++k2) {
                        int i = hom_[x][y][k1].degree, j = hom_[y][z][k2].degree;
                        int k3 = basis_index(x, z, i + j);
                        if (k3 < 0) continue;
                        Stalk X = reps_[x];
                        Stalk Yi = apply_f(reps_[y], i);
                        Stalk Zj = apply_f(reps_[z], j);
                        Stalk Zij = apply_f(Zj, i);
                        int cc = engine_->compose_constant(X, Yi, Zij);
                        if (!cc) continue;
                        int lam = lambda_power(i, reps_[y], Zj);
                        int g1 = basis_offset_[x][y] + static_cast<int>(k1);
                        int g2 = basis_offset_[y][z] + static_cast<int>(k2);
                        compose_[pair_key(g1, g2)] = {basis_offset_[x][z] + k3, f.mul(cc, lam)};
                    }
            }
        }
}

void OrbitCategory::build_shift_basis() {
    shift_basis_.assign(global_.size(), {-1, 0});
    for (size_t g = 0; g < global_.size(); ++g) {
        auto [x, y, k] = global_[g];
        const HomBasisElem& e = hom_[x][y][k];
        Stalk U = reps_[x].shifted(1);
        Stalk V = apply_f(reps_[y], e.degree).shifted(1);
        auto [kk, coef] = push_down(U, V, 1);
        shift_basis_[g] = {basis_offset_[sigma_[x]][sigma_[y]] + kk, coef};
    }
}

std::pair<int, int> OrbitCategory::push_down(const Stalk& u, const Stalk& v, int coef) const {
    auto [iu, a] = locate(u);
    auto [iv, b] = locate(v);
    int k = basis_index(iu, iv, b - a);
    if (k < 0) throw Error(ErrorCode::InvariantViolation, "push-down of a morphism with no orbit basis");
    Fp f{p_};
    int lam = lambda_power(a, reps_[iu], apply_f(reps_[iv], b - a));
    return {k, f.mul(coef, f.inv(lam))};
}

void OrbitCategory::validate() const {
    int N = size();
    for (int x = 0; x < N; ++x)
        if (cartan_[x][x] != 1)
            throw Error(ErrorCode::InvariantViolation, name(x) + " is not a brick");
    for (int x = 0; x < N; ++x) {
        int sw = sigma_power(x, -w_);
        if (serre_[x] != sw)
            throw Error(ErrorCode::InvariantViolation, "Serre functor differs from the (-w)-shift on " + name(x));
        if (sigma_[tau_[x]] != tau_[sigma_[x]])
            throw Error(ErrorCode::InvariantViolation, "shift and tau do not commute on " + name(x));
        if (sigma_power(tau_[x], w_ + 1) != x)
            throw Error(ErrorCode::InvariantViolation, "F is not trivial on the orbit of " + name(x));
        for (int y = 0; y < N; ++y)
            if (cartan_[x][y] != cartan_[y][sw])
                throw Error(ErrorCode::InvariantViolation,
                            "Serre symmetry fails for (" + name(x) + ", " + name(y) + ")");
    }
}

int OrbitCategory::sigma_power(int x, int k) const {
    for (; k > 0; --k) x = sigma_[x];
    for (; k < 0; ++k) x = sigma_inv_[x];
    return x;
}

int OrbitCategory::act(Functor f, int x) const {
    switch (f) {
        case Functor::Shift: return sigma_[x];
        case Functor::ShiftInverse: return sigma_inv_[x];
        case Functor::Tau: return tau_[x];
        case Functor::TauInverse: return tau_inv_[x];
        case Functor::Serre: return serre_[x];
        case Functor::SerreInverse: return serre_inv_[x];
    }
    return x;
}

ObjectVector OrbitCategory::act(Functor f, const ObjectVector& x) const {
    ObjectVector out(size(), 0);
    for (int i = 0; i < size(); ++i) out[act(f, i)] += x[i];
    return out;
}

ObjectVector OrbitCategory::act_serre_shift(int m, const ObjectVector& x) const {
    ObjectVector out(size(), 0);
    for (int i = 0; i < size(); ++i) out[serre_[sigma_power(i, -m)]] += x[i];
    return out;
}

int OrbitCategory::hom_dim_vectors(const ObjectVector& x, const ObjectVector& y) const {
    int d = 0;
    for (int i = 0; i < size(); ++i)
        for (int j = 0; j < size(); ++j)
            if (x[i] && y[j]) d += x[i] * y[j] * cartan_[i][j];
    return d;
}

int OrbitCategory::max_hom_dim() const {
    int m = 0;
    for (const auto& row : cartan_)
        for (int v : row) m = std::max(m, v);
    return m;
}

std::optional<std::pair<int, int>> OrbitCategory::compose_basis(int x, int y, int z, int k1, int k2) const {
    auto it = compose_.find(pair_key(basis_offset_[x][y] + k1, basis_offset_[y][z] + k2));
    if (it == compose_.end()) return std::nullopt;
    return std::make_pair(global_[it->second.first].k, it->second.second);
}

OrbitMorphism OrbitCategory::zero(const std::vector<int>& src, const std::vector<int>& tgt) const {
    OrbitMorphism m{src, tgt, {}};
    m.coef.resize(tgt.size());
    for (size_t t = 0; t < tgt.size(); ++t) {
        m.coef[t].resize(src.size());
        for (size_t s = 0; s < src.size(); ++s) m.coef[t][s].assign(hom_dim(src[s], tgt[t]), 0);
    }
    return m;
}

OrbitMorphism OrbitCategory::identity(const std::vector<int>& obj) const {
    OrbitMorphism m = zero(obj, obj);
    for (size_t i = 0; i < obj.size(); ++i) m.coef[i][i][basis_index(obj[i], obj[i], 0)] = 1;
    return m;
}

OrbitMorphism OrbitCategory::basis_morphism(int x, int y, int k) const {
    OrbitMorphism m = zero({x}, {y});
    m.coef[0][0][k] = 1;
    return m;
}

OrbitMorphism OrbitCategory::compose(const OrbitMorphism& g, const OrbitMorphism& f) const {
    if (g.src != f.tgt) throw Error(ErrorCode::Dimension, "composition of non-composable morphisms");
    OrbitMorphism out = zero(f.src, g.tgt);
    Fp fp{p_};
    for (size_t u = 0; u < g.tgt.size(); ++u)
        for (size_t t = 0; t < f.tgt.size(); ++t)
            for (size_t s = 0; s < f.src.size(); ++s)
                for (size_t k1 = 0; k1 < f.coef[t][s].size(); ++k1) {
                    int a = f.coef[t][s][k1];
                    if (!a) continue;
                    for (size_t k2 = 0; k2 < g.coef[u][t].size(); ++k2) {
                        int b = g.coef[u][t][k2];
                        if (!b) continue;
                        auto r = compose_basis(f.src[s], f.tgt[t], g.tgt[u], static_cast<int>(k1), static_cast<int>(k2));
                        if (!r) continue;
                        int& cell = out.coef[u][s][r->first];
                        cell = fp.add(cell, fp.mul(fp.mul(a, b), r->second));
                    }
                }
    return out;
}

OrbitMorphism OrbitCategory::add(const OrbitMorphism& a, const OrbitMorphism& b) const {
    if (a.src != b.src || a.tgt != b.tgt) throw Error(ErrorCode::Dimension, "sum of morphisms with different shapes");
    OrbitMorphism out = a;
    Fp f{p_};
    for (size_t t = 0; t < a.tgt.size(); ++t)
        for (size_t s = 0; s < a.src.size(); ++s)
            for (size_t k = 0; k < a.coef[t][s].size(); ++k) out.coef[t][s][k] = f.add(a.coef[t][s][k], b.coef[t][s][k]);
    return out;
}

OrbitMorphism OrbitCategory::scale(const OrbitMorphism& a, int c) const {
    OrbitMorphism out = a;
    Fp f{p_};
    int cc = f.norm(c);
    for (auto& row : out.coef)
        for (auto& cell : row)
            for (int& v : cell) v = f.mul(v, cc);
    return out;
}

OrbitMorphism OrbitCategory::shift(const OrbitMorphism& f, int k) const {
    OrbitMorphism cur = f;
    Fp fp{p_};
    for (; k != 0; k += (k > 0 ? -1 : 1)) {
        bool fwd = k > 0;
        std::vector<int> src, tgt;
        for (int x : cur.src) src.push_back(fwd ? sigma_[x] : sigma_inv_[x]);
        for (int y : cur.tgt) tgt.push_back(fwd ? sigma_[y] : sigma_inv_[y]);
        OrbitMorphism out = zero(src, tgt);
        for (size_t t = 0; t < cur.tgt.size(); ++t)
            for (size_t s = 0; s < cur.src.size(); ++s)
                for (size_t kk = 0; kk < cur.coef[t][s].size(); ++kk) {
                    int v = cur.coef[t][s][kk];
                    if (!v) continue;
                    if (fwd) {
                        auto [g2, c] = shift_basis_[basis_offset_[cur.src[s]][cur.tgt[t]] + kk];
                        out.coef[t][s][global_[g2].k] = fp.mul(v, c);
                    } else {
                        // Invert Σ on the basis of Hom(src', tgt').
                        int x = src[s], y = tgt[t];
                        bool found = false;
                        for (int k2 = 0; k2 < hom_dim(x, y) && !found; ++k2) {
                            auto [g2, c] = shift_basis_[basis_offset_[x][y] + k2];
                            if (global_[g2].k == static_cast<int>(kk)) {
                                out.coef[t][s][k2] = fp.mul(v, fp.inv(c));
                                found = true;
                            }
                        }
                        if (!found) throw Error(ErrorCode::InvariantViolation, "Σ is not bijective on a Hom basis");
                    }
                }
        cur = out;
    }
    return cur;
}

int OrbitCategory::hom_dim(const std::vector<int>& src, const std::vector<int>& tgt) const {
    int d = 0;
    for (int t : tgt)
        for (int s : src) d += hom_dim(s, t);
    return d;
}

std::vector<int> OrbitCategory::flatten(const OrbitMorphism& f) const {
    std::vector<int> v;
    for (const auto& row : f.coef)
        for (const auto& cell : row)
            for (int c : cell) v.push_back(c);
    return v;
}

OrbitMorphism OrbitCategory::unflatten(const std::vector<int>& src, const std::vector<int>& tgt,
                                       const std::vector<int>& v) const {
    OrbitMorphism m = zero(src, tgt);
    size_t i = 0;
    for (auto& row : m.coef)
        for (auto& cell : row)
            for (int& c : cell) c = v.at(i++);
    return m;
}

ObjectVector OrbitCategory::fingerprint_solve(const std::vector<int>& d) const {
    int N = size();
    Matrix c(N, N, kCertPrimeA);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) c.set(i, j, cartan_[i][j]);
    auto sol = solve(c, d);
    if (!sol) throw Error(ErrorCode::NonIntegralSolution, "fingerprint has no solution");
    Fp f{kCertPrimeA};
    ObjectVector m(N);
    for (int j = 0; j < N; ++j) {
        long long v = f.lift((*sol)[j]);
        if (v < 0) throw Error(ErrorCode::NonIntegralSolution, "fingerprint solution has a negative multiplicity");
        m[j] = static_cast<int>(v);
    }
    for (int i = 0; i < N; ++i) {
        long long s = 0;
        for (int j = 0; j < N; ++j) s += static_cast<long long>(cartan_[i][j]) * m[j];
        if (s != d[i]) throw Error(ErrorCode::NonIntegralSolution, "fingerprint solution fails the integer check");
    }
    return m;
}

int OrbitCategory::rank_hom_from(int q, const OrbitMorphism& f) const {
    std::vector<std::vector<int>> cols;
    for (size_t s = 0; s < f.src.size(); ++s)
        for (int k = 0; k < hom_dim(q, f.src[s]); ++k) {
            OrbitMorphism e = zero({q}, f.src);
            e.coef[s][0][k] = 1;
            cols.push_back(flatten(compose(f, e)));
        }
    int rows = hom_dim(std::vector<int>{q}, f.tgt);
    Matrix m(rows, static_cast<int>(cols.size()), p_);
    for (size_t j = 0; j < cols.size(); ++j)
        for (int i = 0; i < rows; ++i) m.at(i, static_cast<int>(j)) = cols[j][i];
    return minuscy::rank(m);
}

int OrbitCategory::rank_hom_to(const OrbitMorphism& f, int q) const {
    std::vector<std::vector<int>> cols;
    for (size_t t = 0; t < f.tgt.size(); ++t)
        for (int k = 0; k < hom_dim(f.tgt[t], q); ++k) {
            OrbitMorphism e = zero(f.tgt, {q});
            e.coef[0][t][k] = 1;
            cols.push_back(flatten(compose(e, f)));
        }
    int rows = hom_dim(f.src, std::vector<int>{q});
    Matrix m(rows, static_cast<int>(cols.size()), p_);
    for (size_t j = 0; j < cols.size(); ++j)
        for (int i = 0; i < rows; ++i) m.at(i, static_cast<int>(j)) = cols[j][i];
    return minuscy::rank(m);
}

std::vector<int> OrbitCategory::hom_fingerprint(const OrbitMorphism& f) const {
    std::vector<int> d(size());
    for (int q = 0; q < size(); ++q) {
        int coker = hom_dim(std::vector<int>{q}, f.tgt) - rank_hom_from(q, f);
        int p = sigma_inv_[q];
        int ker = hom_dim(std::vector<int>{p}, f.src) - rank_hom_from(p, f);
        d[q] = coker + ker;
    }
    return d;
}

std::vector<int> OrbitCategory::object_fingerprint(const ObjectVector& m) const {
    std::vector<int> d(size(), 0);
    for (int q = 0; q < size(); ++q)
        for (int j = 0; j < size(); ++j) d[q] += cartan_[q][j] * m[j];
    return d;
}

ObjectVector OrbitCategory::cone_fingerprint(const OrbitMorphism& f) const {
    if (!cartan_certified_)
        throw Error(ErrorCode::CartanSingular, "Cartan matrix of rank " + std::to_string(n_) +
                                                   " weight " + std::to_string(w_) + " is singular");
    return fingerprint_solve(hom_fingerprint(f));
}

std::optional<TriangleRecord> OrbitCategory::lifted_cone(const OrbitMorphism& f) const {
    int S = static_cast<int>(f.src.size()), T = static_cast<int>(f.tgt.size());
    // Degree potential: pot[target] - pot[source] = orbit degree of every nonzero component.
    std::vector<std::vector<std::pair<int, int>>> adj(S + T);
    std::vector<std::vector<int>> comp_k(T, std::vector<int>(S, -1));
    for (int t = 0; t < T; ++t)
        for (int s = 0; s < S; ++s) {
            int deg = 0, count = 0;
            for (size_t k = 0; k < f.coef[t][s].size(); ++k)
                if (f.coef[t][s][k]) {
                    deg = hom_[f.src[s]][f.tgt[t]][k].degree;
                    comp_k[t][s] = static_cast<int>(k);
                    ++count;
                }
            if (count > 1) return std::nullopt;
            if (count == 1) {
                adj[s].push_back({S + t, deg});
                adj[S + t].push_back({s, -deg});
            }
        }
    std::vector<int> pot(S + T, 0);
    std::vector<char> done(S + T, 0);
    for (int start = 0; start < S + T; ++start) {
        if (done[start]) continue;
        done[start] = 1;
        std::deque<int> q{start};
        while (!q.empty()) {
            int u = q.front();
            q.pop_front();
            for (auto [v, dd] : adj[u]) {
                if (!done[v]) {
                    done[v] = 1;
                    pot[v] = pot[u] + dd;
                    q.push_back(v);
                } else if (pot[v] != pot[u] + dd) {
                    return std::nullopt;
                }
            }
        }
    }
    DbObject xh, yh;
    for (int s = 0; s < S; ++s) xh.push_back(apply_f(reps_[f.src[s]], pot[s]));
    for (int t = 0; t < T; ++t) yh.push_back(apply_f(reps_[f.tgt[t]], pot[S + t]));
    DbMorphism fh = DbMorphism::zero(xh, yh);
    Fp fp{p_};
    for (int t = 0; t < T; ++t)
        for (int s = 0; s < S; ++s) {
            int k = comp_k[t][s];
            if (k < 0) continue;
            int d = pot[S + t] - pot[s];
            int lam = lambda_power(pot[s], reps_[f.src[s]], apply_f(reps_[f.tgt[t]], d));
            fh.coef[t][s] = fp.mul(f.coef[t][s][k], lam);
        }
    DbTriangle tri = engine_->cone(fh);

    std::vector<std::pair<int, int>> located;
    for (const Stalk& st : tri.c) located.push_back(locate(st));
    std::vector<int> order(tri.c.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return located[a].first < located[b].first; });
    std::vector<int> pos(order.size());
    TriangleRecord rec;
    rec.x = f.src;
    rec.y = f.tgt;
    for (size_t i = 0; i < order.size(); ++i) {
        rec.c.push_back(located[order[i]].first);
        pos[order[i]] = static_cast<int>(i);
    }
    std::vector<int> sx;
    for (int x : f.src) sx.push_back(sigma_[x]);
    rec.f = f;
    rec.g = zero(f.tgt, rec.c);
    rec.h = zero(rec.c, sx);
    for (size_t ci = 0; ci < tri.c.size(); ++ci) {
        for (int t = 0; t < T; ++t) {
            int v = tri.g.coef[ci][t];
            if (!v) continue;
            auto [k, c] = push_down(yh[t], tri.c[ci], v);
            rec.g.coef[pos[ci]][t][k] = fp.add(rec.g.coef[pos[ci]][t][k], c);
        }
        for (int s = 0; s < S; ++s) {
            int v = tri.h.coef[s][ci];
            if (!v) continue;
            auto [k, c] = push_down(tri.c[ci], xh[s].shifted(1), v);
            rec.h.coef[s][pos[ci]][k] = fp.add(rec.h.coef[s][pos[ci]][k], c);
        }
    }
    rec.provenance = "lifted";
    return rec;
}

TriangleRecord OrbitCategory::iterated_cone(const OrbitMorphism& f) const {
    OrbitMorphism g = identity(f.tgt);
    for (size_t s = 0; s < f.src.size(); ++s) {
        OrbitMorphism fs = zero({f.src[s]}, f.tgt);
        for (size_t t = 0; t < f.tgt.size(); ++t) fs.coef[t][0] = f.coef[t][s];
        auto step = lifted_cone(compose(g, fs));
        if (!step) throw Error(ErrorCode::InvariantViolation, "cone step from " + name(f.src[s]) + " does not lift");
        g = compose(step->g, g);
    }
    TriangleRecord rec;
    rec.x = f.src;
    rec.y = f.tgt;
    rec.c = g.tgt;
    rec.f = f;
    rec.g = g;
    std::vector<int> sx;
    for (int x : f.src) sx.push_back(sigma_[x]);
    rec.h = zero(rec.c, sx);
    rec.symbolic = true;
    rec.provenance = "iterated";
    return rec;
}

TriangleRecord OrbitCategory::cone(const OrbitMorphism& f) const {
    auto rec = lifted_cone(f);
    if (!rec) rec = iterated_cone(f);
    if (object_fingerprint(to_vector(*this, rec->c)) != hom_fingerprint(f))
        throw Error(ErrorCode::InvariantViolation, "cone disagrees with its Hom fingerprint");
    return *rec;
}

std::string OrbitCategory::to_json() const {
    using nlohmann::json;
    json j;
    j["kind"] = "orbit_category";
    j["type"] = "A";
    j["rank"] = n_;
    j["cy_weight"] = w_;
    j["prime"] = p_;
    json ind = json::array();
    for (int x = 0; x < size(); ++x)
        ind.push_back({{"id", x}, {"name", name(x)}, {"coord", {reps_[x].shift, reps_[x].iv.a, reps_[x].iv.b}}});
    j["indecomposables"] = ind;
    json hom = json::object();
    for (int x = 0; x < size(); ++x)
        for (int y = 0; y < size(); ++y) {
            if (hom_[x][y].empty()) continue;
            json arr = json::array();
            for (int k = 0; k < hom_dim(x, y); ++k)
                arr.push_back({{"degree", hom_[x][y][k].degree}, {"basis_id", basis_offset_[x][y] + k}});
            hom[std::to_string(x) + "," + std::to_string(y)] = arr;
        }
    j["hom"] = hom;
    j["perm_shift"] = sigma_;
    j["perm_tau"] = tau_;
    j["cartan"] = cartan_;
    j["cartan_certified"] = cartan_certified_;
    std::vector<std::array<int, 4>> comp;
    for (const auto& [key, val] : compose_)
        comp.push_back({static_cast<int>(key >> 32), static_cast<int>(key & 0xffffffff), val.first, val.second});
    std::sort(comp.begin(), comp.end());
    j["composition"] = comp;
    json sb = json::array();
    for (size_t g = 0; g < shift_basis_.size(); ++g) sb.push_back({static_cast<int>(g), shift_basis_[g].first, shift_basis_[g].second});
    j["shift_basis"] = sb;
    j["checksum"] = fnv1a64(j.dump());
    return j.dump() + "\n";
}

OrbitCategory OrbitCategory::from_json(const std::string& text) {
    using nlohmann::json;
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw Error(ErrorCode::SchemaViolation, std::string("unparsable snapshot: ") + e.what());
    }
    try {
        if (j.at("kind") != "orbit_category" || j.at("type") != "A")
            throw Error(ErrorCode::SchemaViolation, "not a type-A orbit category snapshot");
        std::string sum = j.at("checksum");
        json body = j;
        body.erase("checksum");
        if (fnv1a64(body.dump()) != sum) throw Error(ErrorCode::ChecksumMismatch, "snapshot checksum does not match");

        OrbitCategory c;
        c.n_ = j.at("rank");
        c.w_ = j.at("cy_weight");
        c.p_ = j.at("prime");
        c.engine_ = std::make_shared<DbEngine>(c.n_, c.p_);
        c.window_bound_ = (c.w_ + 1) * (c.n_ + 1) + 2;
        for (const auto& e : j.at("indecomposables")) {
            auto coord = e.at("coord");
            c.reps_.push_back(Stalk{coord[0], {coord[1], coord[2]}});
        }
        int N = c.size();
        c.cartan_ = j.at("cartan").get<std::vector<std::vector<int>>>();
        if (static_cast<int>(c.cartan_.size()) != N) throw Error(ErrorCode::SchemaViolation, "Cartan matrix size");
        for (const auto& row : c.cartan_)
            if (static_cast<int>(row.size()) != N) throw Error(ErrorCode::SchemaViolation, "Cartan matrix size");
        c.cartan_certified_ = cartan_invertible(c.cartan_, kCertPrimeA) || cartan_invertible(c.cartan_, kCertPrimeB);
        if (j.at("cartan_certified").get<bool>() && !c.cartan_certified_)
            throw Error(ErrorCode::CartanSingular, "declared Cartan matrix is singular but marked certified");
        c.sigma_ = j.at("perm_shift").get<std::vector<int>>();
        c.tau_ = j.at("perm_tau").get<std::vector<int>>();
        if (static_cast<int>(c.sigma_.size()) != N || static_cast<int>(c.tau_.size()) != N)
            throw Error(ErrorCode::SchemaViolation, "permutation size");
        c.hom_.assign(N, std::vector<std::vector<HomBasisElem>>(N));
        std::vector<std::vector<int>> declared(N, std::vector<int>(N, 0));
        for (auto it = j.at("hom").begin(); it != j.at("hom").end(); ++it) {
            int x = 0, y = 0;
            if (std::sscanf(it.key().c_str(), "%d,%d", &x, &y) != 2 || x < 0 || y < 0 || x >= N || y >= N)
                throw Error(ErrorCode::SchemaViolation, "bad hom key " + it.key());
            for (const auto& e : it.value()) c.hom_[x][y].push_back({e.at("degree").get<int>(), 0});
            declared[x][y] = static_cast<int>(it.value().size());
        }
        // Serre symmetry of the declared Hom dimensions, naming the first failing pair.
        std::vector<int> inv(N);
        for (int x = 0; x < N; ++x) inv[c.sigma_[x]] = x;
        for (int x = 0; x < N; ++x) {
            int sw = x;
            for (int k = 0; k < c.w_; ++k) sw = inv[sw];
            for (int y = 0; y < N; ++y) {
                if (declared[x][y] != c.cartan_[x][y])
                    throw Error(ErrorCode::SchemaViolation, "hom and cartan disagree at (" + c.name(x) + ", " + c.name(y) + ")");
                if (declared[x][y] != declared[y][sw])
                    throw Error(ErrorCode::InvariantViolation,
                                "Serre symmetry fails for (" + c.name(x) + ", " + c.name(y) + ")");
            }
        }
        // Rebuild the orbit window from the representatives.
        for (int x = 0; x < N; ++x) {
            Stalk t = c.reps_[x];
            int k = 0;
            while (t.shift >= -c.window_bound_) {
                c.window_[t] = {x, k};
                t = c.apply_f(t, -1);
                --k;
            }
            t = c.reps_[x];
            k = 0;
            while (t.shift <= c.window_bound_) {
                c.window_[t] = {x, k};
                t = c.apply_f(t, 1);
                ++k;
            }
        }
        for (int x = 0; x < N; ++x)
            for (int y = 0; y < N; ++y)
                for (auto& e : c.hom_[x][y]) {
                    Stalk v = c.apply_f(c.reps_[y], e.degree);
                    e.rdeg = v.shift - c.reps_[x].shift;
                }
        c.sigma_inv_.assign(N, 0);
        c.tau_inv_.assign(N, 0);
        c.serre_.assign(N, 0);
        c.serre_inv_.assign(N, 0);
        c.sigma_pow_.assign(N, 0);
        for (int x = 0; x < N; ++x) {
            c.sigma_inv_[c.sigma_[x]] = x;
            c.tau_inv_[c.tau_[x]] = x;
            c.sigma_pow_[x] = c.locate(c.reps_[x].shifted(1)).second;
        }
        for (int x = 0; x < N; ++x) {
            c.serre_[x] = c.sigma_[c.tau_[x]];
            c.serre_inv_[c.serre_[x]] = x;
        }
        c.basis_offset_.assign(N, std::vector<int>(N, 0));
        for (int x = 0; x < N; ++x)
            for (int y = 0; y < N; ++y) {
                c.basis_offset_[x][y] = static_cast<int>(c.global_.size());
                for (int k = 0; k < c.hom_dim(x, y); ++k) c.global_.push_back({x, y, k});
            }
        for (const auto& e : j.at("composition")) {
            auto a = e.get<std::array<int, 4>>();
            c.compose_[pair_key(a[0], a[1])] = {a[2], a[3]};
        }
        c.shift_basis_.assign(c.global_.size(), {-1, 0});
        for (const auto& e : j.at("shift_basis")) {
            auto a = e.get<std::array<int, 3>>();
            c.shift_basis_.at(a[0]) = {a[1], a[2]};
        }
        c.validate();
        return c;
    } catch (const json::exception& e) {
        throw Error(ErrorCode::SchemaViolation, std::string("malformed snapshot: ") + e.what());
    }
}

}  // namespace minuscy
