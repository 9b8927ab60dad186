#include "minuscy/reduction.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>

#include "minuscy/linalg.hpp"

namespace minuscy {

namespace {

constexpr size_t kMaxViolations = 8;

bool in_sorted(const Collection& c, int x) { return std::binary_search(c.begin(), c.end(), x); }

std::vector<int> concat(std::vector<int> a, const std::vector<int>& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

std::vector<int> sub(const Fp& f, const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> out(a.size());
    for (size_t i = 0; i < a.size(); ++i) out[i] = f.sub(a[i], b[i]);
    return out;
}

// Morphisms 0 and λ·b between two indecomposables, b running over a basis.
std::vector<OrbitMorphism> small_morphisms(const OrbitCategory& c, int x, int y) {
    std::vector<OrbitMorphism> out{c.zero({x}, {y})};
    int top = c.prime() <= 3 ? c.prime() - 1 : 1;
    for (int k = 0; k < c.hom_dim(x, y); ++k)
        for (int l = 1; l <= top; ++l) out.push_back(c.scale(c.basis_morphism(x, y, k), l));
    return out;
}

std::string describe(const OrbitCategory& c, const OrbitMorphism& f) {
    std::string out;
    for (size_t i = 0; i < f.src.size(); ++i) out += (i ? "+" : "") + c.name(f.src[i]);
    out += " -> ";
    for (size_t i = 0; i < f.tgt.size(); ++i) out += (i ? "+" : "") + c.name(f.tgt[i]);
    return out + " " + std::string(f.is_zero() ? "(zero)" : "(nonzero)");
}

}  // namespace

void Report::fail(const std::string& what) {
    ok = false;
    if (violations.size() < kMaxViolations) violations.push_back(what);
}

AffineSolution solve_linear(int dim, int p, const std::function<std::vector<int>(const std::vector<int>&)>& map,
                            const std::vector<int>& rhs) {
    int rows = static_cast<int>(rhs.size());
    Matrix m(rows, dim, p);
    for (int j = 0; j < dim; ++j) {
        std::vector<int> e(dim, 0);
        e[j] = 1;
        auto col = map(e);
        if (static_cast<int>(col.size()) != rows) throw Error(ErrorCode::Dimension, "linear map has inconsistent size");
        for (int i = 0; i < rows; ++i) m.at(i, j) = col[i];
    }
    AffineSolution out;
    out.particular = solve(m, rhs);
    Matrix k = kernel_basis(m);
    for (int j = 0; j < k.cols(); ++j) {
        std::vector<int> v(dim);
        for (int i = 0; i < dim; ++i) v[i] = k.at(i, j);
        out.kernel.push_back(v);
    }
    return out;
}

ReducedCategory::ReducedCategory(const OrbitCategory& c, const Collection& s, int w)
    : c_(&c), w_(w), table_(c, s), z_(perp_w(c, table_.generators(), w)), shift_(c.size(), -1),
      shift_inv_(c.size(), -1) {}

ReducedCategory ReducedCategory::reduce(const OrbitCategory& c, const Collection& s, int w) {
    Collection norm = normalize_collection(s, c.size());
    auto cert = check_w_orthogonal(CategoryView::of(c), norm, w);
    if (!cert.ok) throw Error(ErrorCode::NotOrthogonal, format_collection(c, norm) + ": " + cert.detail);
    ReducedCategory r(c, norm, w);
    for (int x : r.z_) {
        auto up = to_summands(right_mutation(c, r.table_, x));
        if (up.size() != 1 || !r.contains(up[0]))
            throw Error(ErrorCode::InvariantViolation, "shift of " + c.name(x) + " is not an indecomposable of Z");
        if (r.shift_inv_[up[0]] >= 0)
            throw Error(ErrorCode::InvariantViolation, "shift is not injective at " + c.name(x));
        r.shift_[x] = up[0];
        r.shift_inv_[up[0]] = x;
    }
    for (int x : r.z_) {
        auto down = to_summands(left_mutation(c, r.table_, x));
        if (down.size() != 1 || down[0] != r.shift_inv_[x])
            throw Error(ErrorCode::InvariantViolation, "inverse shift disagrees with shift at " + c.name(x));
    }
    return r;
}

bool ReducedCategory::contains(int x) const { return in_sorted(z_, x); }

bool ReducedCategory::contains(const std::vector<int>& xs) const {
    return std::all_of(xs.begin(), xs.end(), [&](int x) { return contains(x); });
}

int ReducedCategory::shift_power(int x, int k) const {
    for (; k > 0; --k) x = shift(x);
    for (; k < 0; ++k) x = shift_inverse(x);
    return x;
}

TriangleRecord ReducedCategory::shift_triangle(const std::vector<int>& x) const {
    std::vector<int> sx;
    for (int v : x) sx.push_back(c_->sigma(v));
    return min_right_approx(*c_, table_.members(), sx);
}

std::vector<int> ReducedCategory::shift_list(const std::vector<int>& x) const {
    std::vector<int> out;
    for (int v : x) out.push_back(shift(v));
    return out;
}

OrbitMorphism ReducedCategory::shift_morphism(const OrbitMorphism& a) const {
    const OrbitCategory& c = *c_;
    auto bx = shift_triangle(a.src), by = shift_triangle(a.tgt);
    OrbitMorphism rhs = c.compose(by.g, c.shift(a, 1));
    OrbitMorphism probe = c.zero(bx.c, by.c);
    int dim = static_cast<int>(c.flatten(probe).size());
    auto sol = solve_linear(
        dim, c.prime(), [&](const std::vector<int>& v) { return c.flatten(c.compose(c.unflatten(bx.c, by.c, v), bx.g)); },
        c.flatten(rhs));
    if (!sol.particular) throw Error(ErrorCode::InvariantViolation, "shift of " + describe(c, a) + " does not exist");
    if (!sol.kernel.empty()) throw Error(ErrorCode::InvariantViolation, "shift of " + describe(c, a) + " is not unique");
    return c.unflatten(bx.c, by.c, *sol.particular);
}

ZTriangle ReducedCategory::z_cone(const OrbitMorphism& f) const {
    const OrbitCategory& c = *c_;
    if (!contains(f.src) || !contains(f.tgt)) throw Error(ErrorCode::Usage, "morphism is not between objects of Z");
    auto t1 = c.cone(f);
    auto ap = min_right_approx(c, table_.members(), t1.c);
    ZTriangle out;
    out.x = f.src;
    out.y = f.tgt;
    out.z = ap.c;
    out.c_f = t1.c;
    out.s_f = ap.x;
    out.f = f;
    out.g = c.compose(ap.g, t1.g);
    auto bx = shift_triangle(f.src);
    out.h = c.zero(ap.c, bx.c);
    if (t1.symbolic) {
        out.h_known = false;
        return out;
    }
    if (t1.h.tgt != bx.y) throw Error(ErrorCode::InvariantViolation, "connecting map has unexpected target order");
    // h β_f = β_x h_1, unique since x<1> ∈ Z and (Z,Z) is a mutation pair.
    int dim = static_cast<int>(c.flatten(out.h).size());
    auto sol = solve_linear(
        dim, c.prime(), [&](const std::vector<int>& v) { return c.flatten(c.compose(c.unflatten(ap.c, bx.c, v), ap.g)); },
        c.flatten(c.compose(bx.g, t1.h)));
    if (!sol.particular) throw Error(ErrorCode::InvariantViolation, "no connecting map for " + describe(c, f));
    if (!sol.kernel.empty()) throw Error(ErrorCode::InvariantViolation, "connecting map of " + describe(c, f) + " is not unique");
    out.h = c.unflatten(ap.c, bx.c, *sol.particular);
    return out;
}

CategoryView ReducedCategory::view() const {
    CategoryView v;
    v.ids = z_;
    std::map<int, int> pos;
    for (size_t i = 0; i < z_.size(); ++i) pos[z_[i]] = static_cast<int>(i);
    for (int x : z_) {
        std::vector<int> row;
        for (int y : z_) row.push_back(c_->hom_dim(x, y));
        v.hom.push_back(row);
        v.shift.push_back(pos.at(shift(x)));
        v.shift_inv.push_back(pos.at(shift_inverse(x)));
    }
    return v;
}

std::vector<std::pair<int, int>> ReducedCategory::irreducible_maps() const {
    const OrbitCategory& c = *c_;
    std::vector<std::pair<int, int>> out;
    for (int x : z_)
        for (int y : z_) {
            int dim = c.hom_dim(x, y);
            if (x == y || dim == 0) continue;
            std::vector<std::vector<int>> comps;
            for (int m : z_) {
                if (m == x || m == y) continue;
                for (int k1 = 0; k1 < c.hom_dim(x, m); ++k1)
                    for (int k2 = 0; k2 < c.hom_dim(m, y); ++k2)
                        comps.push_back(c.flatten(c.compose(c.basis_morphism(m, y, k2), c.basis_morphism(x, m, k1))));
            }
            Matrix mat(dim, static_cast<int>(comps.size()), c.prime());
            for (size_t q = 0; q < comps.size(); ++q)
                for (int r = 0; r < dim; ++r) mat.at(r, static_cast<int>(q)) = comps[q][r];
            if (minuscy::rank(mat) < dim) out.push_back({x, y});
        }
    return out;
}

std::vector<Collection> ReducedCategory::components() const {
    int n = size();
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int i) { return parent[i] == i ? i : parent[i] = find(parent[i]); };
    auto pos = [&](int x) { return static_cast<int>(std::lower_bound(z_.begin(), z_.end(), x) - z_.begin()); };
    for (auto [x, y] : irreducible_maps()) parent[find(pos(x))] = find(pos(y));
    // A vertex and its translate S̄ x<-1> = x<-w-1> lie in one component even
    // when no arrow joins them, as for a single object in the quiver ZA_1.
    for (int x : z_) parent[find(pos(x))] = find(pos(shift_power(x, -w_ - 1)));
    std::map<int, Collection> groups;
    for (int i = 0; i < n; ++i) groups[find(i)].push_back(z_[i]);
    std::vector<Collection> out;
    for (auto& [root, g] : groups) out.push_back(g);
    std::sort(out.begin(), out.end(), [](const Collection& a, const Collection& b) {
        return a.size() != b.size() ? a.size() > b.size() : a < b;
    });
    return out;
}

Collection ReducedCategory::z_closure(const Collection& r) const {
    const OrbitCategory& c = *c_;
    Collection rs = normalize_collection(r, c.size());
    for (int x : rs)
        if (!contains(x)) throw Error(ErrorCode::Usage, c.name(x) + " is not in Z");
    for (int x : rs)
        for (int y : rs)
            if (c.hom_dim(x, y) != (x == y ? 1 : 0))
                throw Error(ErrorCode::NotOrthogonal, format_collection(c, rs) + " is not orthogonal in Z");
    std::set<int> in(rs.begin(), rs.end());
    for (bool changed = true; changed;) {
        changed = false;
        for (int x : z_) {
            if (in.count(x)) continue;
            for (int q : rs) {
                if (!c.hom_dim(q, x)) continue;
                auto t = z_cone(c.basis_morphism(q, x, 0));
                if (std::all_of(t.z.begin(), t.z.end(), [&](int v) { return in.count(v) > 0; })) {
                    in.insert(x);
                    changed = true;
                    break;
                }
            }
        }
    }
    Collection out(in.begin(), in.end());
    // Torsion class of R inside Z: ^⊥(R^⊥) with both perps taken in Z.
    Collection rperp, torsion;
    for (int x : z_)
        if (std::none_of(rs.begin(), rs.end(), [&](int q) { return c.hom_dim(q, x) > 0; })) rperp.push_back(x);
    for (int x : z_)
        if (std::none_of(rperp.begin(), rperp.end(), [&](int q) { return c.hom_dim(x, q) > 0; })) torsion.push_back(x);
    if (torsion != out)
        throw Error(ErrorCode::InvariantViolation, "extension closure in Z of " + format_collection(c, rs) +
                                                       " differs from its torsion class");
    return out;
}

std::vector<Report> verify_structure(const ReducedCategory& r) {
    const OrbitCategory& c = r.parent();
    const Collection& s = r.generators();
    const Collection& members = r.closure().members();
    int w = r.weight();
    std::vector<Report> out;

    Report perp{"perpendicular"};
    ++perp.checks;
    if (perp_w(c, s, w) != left_perp_w(c, s, w)) perp.fail("S^{⊥_w} differs from ^{⊥_w}S");
    out.push_back(perp);

    Report shift{"shift inverse"};
    for (int x : r.objects()) {
        ++shift.checks;
        if (r.shift_inverse(r.shift(x)) != x || r.shift(r.shift_inverse(x)) != x) shift.fail(c.name(x));
    }
    out.push_back(shift);

    Report pair{"mutation pair"};
    ++pair.checks;
    if (auto cert = is_mutation_pair(c, r.closure(), r.objects(), r.objects()); !cert.ok) pair.fail(cert.detail);
    out.push_back(pair);

    Report ext{"extension closed"};
    for (int x : r.objects())
        for (int y : r.objects()) {
            std::vector<int> sx{c.sigma(x)};
            std::vector<OrbitMorphism> hs{c.zero({y}, sx)};
            for (int k = 0; k < c.hom_dim(y, sx[0]); ++k) hs.push_back(c.basis_morphism(y, sx[0], k));
            for (const auto& h : hs) {
                ++ext.checks;
                for (int q : c.cone(h).c)
                    if (!r.contains(c.sigma_inverse(q))) {
                        ext.fail("extension of " + c.name(y) + " by " + c.name(x) + " leaves Z");
                        break;
                    }
            }
        }
    out.push_back(ext);

    Report cones{"cones in <S> * Z"}, cocones{"cocones in Z * <S>"};
    for (int x : r.objects())
        for (int y : r.objects())
            for (const auto& f : small_morphisms(c, x, y)) {
                auto t = c.cone(f);
                ++cones.checks;
                auto ap = min_right_approx(c, members, t.c);
                if (!r.contains(ap.c)) cones.fail(describe(c, f));
                std::vector<int> cocone;
                for (int q : t.c) cocone.push_back(c.sigma_inverse(q));
                ++cocones.checks;
                auto left = min_left_approx(c, members, cocone);
                for (int q : left.c)
                    if (!r.contains(c.sigma_inverse(q))) {
                        cocones.fail(describe(c, f));
                        break;
                    }
            }
    out.push_back(cones);
    out.push_back(cocones);

    Report approx{"shift approximation is minimal left"};
    for (int x : r.objects()) {
        ++approx.checks;
        auto t = r.shift_triangle({x});
        auto left = min_left_approx(c, members, {c.sigma_inverse(r.shift(x))});
        if (to_vector(c, left.y) != to_vector(c, t.x)) approx.fail(c.name(x));
    }
    out.push_back(approx);
    return out;
}

std::vector<Report> verify_pretriangulated(const ReducedCategory& r) {
    const OrbitCategory& c = r.parent();
    Fp fp{c.prime()};
    std::vector<OrbitMorphism> ms;
    for (int x : r.objects())
        for (int y : r.objects())
            for (auto& f : small_morphisms(c, x, y)) ms.push_back(f);
    std::vector<ZTriangle> tris;
    for (const auto& f : ms) tris.push_back(r.z_cone(f));
    Collection sigma_s = shift_collection(c, r.generators(), 1);
    Collection perp_sigma_s = right_perp(c, sigma_s, 0, 0);

    Report tr1{"TR1"}, tr2{"TR2"}, tr3{"TR3"};
    for (size_t i = 0; i < ms.size(); ++i) {
        const auto& t = tris[i];
        ++tr1.checks;
        if (!r.contains(t.z)) tr1.fail("cone of " + describe(c, ms[i]) + " leaves Z");
        for (int q : t.c_f)
            if (!in_sorted(perp_sigma_s, q)) tr1.fail("D-cone of " + describe(c, ms[i]) + " is not in (ΣS)^⊥");
        if (t.x == t.y && !ms[i].is_zero() && !t.z.empty()) tr1.fail("cone of an isomorphism at " + c.name(t.x[0]));
        if (!t.h_known) ++tr1.skipped;
    }
    for (int x : r.objects()) {
        ++tr1.checks;
        if (!r.z_cone(c.identity({x})).z.empty()) tr1.fail("cone of the identity of " + c.name(x) + " is nonzero");
    }

    for (size_t i = 0; i < ms.size(); ++i) {
        const auto& t = tris[i];
        ++tr2.checks;
        if (to_vector(c, r.z_cone(t.g).z) != to_vector(c, r.shift_list(t.x)))
            tr2.fail("rotation of " + describe(c, ms[i]) + ": cone of g is not x<1>");
        if (!t.h_known) {
            ++tr2.skipped;
            continue;
        }
        ++tr2.checks;
        if (to_vector(c, r.z_cone(t.h).z) != to_vector(c, r.shift_list(t.y)))
            tr2.fail("second rotation of " + describe(c, ms[i]) + ": cone of h is not y<1>");
    }

    for (size_t i = 0; i < ms.size(); ++i)
        for (size_t j = 0; j < ms.size(); ++j) {
            const auto &f = ms[i], &f2 = ms[j];
            const auto &t = tris[i], &t2 = tris[j];
            int x = f.src[0], y = f.tgt[0], x2 = f2.src[0], y2 = f2.tgt[0];
            int da = c.hom_dim(x, x2), db = c.hom_dim(y, y2);
            if (da + db == 0) continue;
            // Commuting squares b f = f' a.
            auto unpack = [&](const std::vector<int>& v) {
                std::vector<int> va(v.begin(), v.begin() + da), vb(v.begin() + da, v.end());
                return std::make_pair(c.unflatten({x}, {x2}, va), c.unflatten({y}, {y2}, vb));
            };
            auto sq = solve_linear(
                da + db, c.prime(),
                [&](const std::vector<int>& v) {
                    auto [a, b] = unpack(v);
                    return sub(fp, c.flatten(c.compose(b, f)), c.flatten(c.compose(f2, a)));
                },
                std::vector<int>(c.hom_dim({x}, {y2}), 0));
            for (const auto& v : sq.kernel) {
                auto [a, b] = unpack(v);
                ++tr3.checks;
                OrbitMorphism ga = r.shift_morphism(a);
                OrbitMorphism probe = c.zero(t.z, t2.z);
                int dim = static_cast<int>(c.flatten(probe).size());
                bool use_h = t.h_known && t2.h_known;
                if (!use_h) ++tr3.skipped;
                std::vector<int> rhs = c.flatten(c.compose(t2.g, b));
                if (use_h) rhs = concat(rhs, c.flatten(c.compose(ga, t.h)));
                auto sol = solve_linear(
                    dim, c.prime(),
                    [&](const std::vector<int>& u) {
                        OrbitMorphism cm = c.unflatten(t.z, t2.z, u);
                        auto out = c.flatten(c.compose(cm, t.g));
                        if (use_h) out = concat(out, c.flatten(c.compose(t2.h, cm)));
                        return out;
                    },
                    rhs);
                if (!sol.particular) tr3.fail("no completion from " + describe(c, f) + " to " + describe(c, f2));
            }
        }
    return {tr1, tr2, tr3};
}

Report verify_octahedral(const ReducedCategory& r, int exhaustive_limit, long budget, unsigned long long seed) {
    const OrbitCategory& c = r.parent();
    Report rep{"TR4"};
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> coef(0, c.prime() - 1);
    std::map<std::pair<std::vector<int>, std::vector<int>>, ZTriangle> cache;
    auto cone_of = [&](const OrbitMorphism& f) -> const ZTriangle& {
        auto key = std::make_pair(concat(f.src, f.tgt), c.flatten(f));
        auto it = cache.find(key);
        if (it == cache.end()) it = cache.emplace(key, r.z_cone(f)).first;
        return it->second;
    };
    auto check = [&](const OrbitMorphism& f, const OrbitMorphism& a) {
        ++rep.checks;
        const ZTriangle& tf = cone_of(f);
        const ZTriangle& ta = cone_of(a);
        OrbitMorphism af = c.compose(a, f);
        const ZTriangle& taf = cone_of(af);
        bool use_h = tf.h_known && taf.h_known;
        if (!use_h) ++rep.skipped;
        OrbitMorphism probe = c.zero(tf.z, taf.z);
        int dim = static_cast<int>(c.flatten(probe).size());
        std::vector<int> rhs = c.flatten(c.compose(taf.g, a));
        if (use_h) rhs = concat(rhs, c.flatten(tf.h));
        auto sol = solve_linear(
            dim, c.prime(),
            [&](const std::vector<int>& u) {
                OrbitMorphism phi = c.unflatten(tf.z, taf.z, u);
                auto out = c.flatten(c.compose(phi, tf.g));
                if (use_h) out = concat(out, c.flatten(c.compose(taf.h, phi)));
                return out;
            },
            rhs);
        std::string what = describe(c, f) + " then " + describe(c, a);
        if (!sol.particular) {
            rep.fail("no map between the cones for " + what);
            return;
        }
        ObjectVector want = to_vector(c, ta.z);
        Fp fp{c.prime()};
        for (int attempt = 0; attempt < 9; ++attempt) {
            std::vector<int> v = *sol.particular;
            if (attempt > 0) {
                if (sol.kernel.empty()) break;
                for (const auto& k : sol.kernel) {
                    int l = coef(rng);
                    for (size_t i = 0; i < v.size(); ++i) v[i] = fp.add(v[i], fp.mul(l, k[i]));
                }
            }
            if (to_vector(c, r.z_cone(c.unflatten(tf.z, taf.z, v)).z) == want) return;
        }
        rep.fail("octahedron does not close for " + what);
    };
    const Collection& z = r.objects();
    if (r.size() <= exhaustive_limit) {
        for (int x : z)
            for (int y : z)
                for (int u : z)
                    for (const auto& f : small_morphisms(c, x, y))
                        for (const auto& a : small_morphisms(c, y, u)) check(f, a);
        rep.note = "exhaustive";
    } else if (!z.empty()) {
        std::uniform_int_distribution<size_t> pick(0, z.size() - 1);
        for (long i = 0; i < budget; ++i) {
            int x = z[pick(rng)], y = z[pick(rng)], u = z[pick(rng)];
            OrbitMorphism f = c.zero({x}, {y}), a = c.zero({y}, {u});
            for (auto* m : {&f, &a})
                for (auto& row : m->coef)
                    for (auto& cell : row)
                        for (int& v : cell) v = coef(rng);
            check(f, a);
        }
        rep.note = "sampled " + std::to_string(budget) + " with seed " + std::to_string(seed);
    }
    return rep;
}

Report serre_in_z(const ReducedCategory& r, std::vector<int>* perm) {
    const OrbitCategory& c = r.parent();
    int w = r.weight();
    Report rep{"Serre in Z"};
    const Collection& z = r.objects();
    std::vector<int> img;
    for (int x : z) {
        int sx = c.serre(c.sigma_power(r.shift_power(x, -w), w));
        ++rep.checks;
        if (!r.contains(sx)) {
            rep.fail("S̄" + c.name(x) + " leaves Z");
            return rep;
        }
        if (sx != r.shift_power(x, -w)) rep.fail("S̄" + c.name(x) + " differs from " + c.name(x) + "<-w>");
        img.push_back(sx);
    }
    for (size_t i = 0; i < z.size(); ++i)
        for (int y : z) {
            ++rep.checks;
            if (c.hom_dim(z[i], y) != c.hom_dim(y, img[i]))
                rep.fail("dim Hom(" + c.name(z[i]) + ", " + c.name(y) + ") differs from its dual");
        }
    if (perm) {
        perm->clear();
        for (int v : img) perm->push_back(static_cast<int>(std::lower_bound(z.begin(), z.end(), v) - z.begin()));
    }
    return rep;
}

Certificate r_filtration_check(const ReducedCategory& r, const Collection& t) {
    const OrbitCategory& c = r.parent();
    Collection tt = normalize_collection(t, c.size());
    const Collection& s = r.generators();
    if (!std::includes(tt.begin(), tt.end(), s.begin(), s.end())) throw Error(ErrorCode::Usage, "T must contain S");
    Collection rest;
    std::set_difference(tt.begin(), tt.end(), s.begin(), s.end(), std::back_inserter(rest));
    for (int x : rest)
        if (!r.contains(x)) return {false, c.name(x) + " in T ∖ S is not in Z"};
    ClosureTable closure(c, tt);
    Collection lhs;
    for (int x : closure.members())
        if (r.contains(x)) lhs.push_back(x);
    Collection rhs = r.z_closure(rest);
    if (lhs != rhs)
        return {false, "<T> ∩ Z = " + format_collection(c, lhs) + " but <T ∖ S>_Z = " + format_collection(c, rhs)};
    return {};
}

}  // namespace minuscy
