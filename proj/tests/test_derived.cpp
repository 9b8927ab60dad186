#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "minuscy/derived.hpp"

using namespace minuscy;

namespace {

std::vector<Stalk> stalks(int n, int lo, int hi) {
    std::vector<Stalk> out;
    for (int s = lo; s <= hi; ++s)
        for (int a = 1; a <= n; ++a)
            for (int b = a; b <= n; ++b) out.push_back(Stalk{s, {a, b}});
    return out;
}

// Enumerates every pattern-respecting degreewise map over F_2 and every
// homotopy, returning dim of chain maps modulo null-homotopic ones.
int brute_k_hom_dim(const PComplex& x, const PComplex& y) {
    struct Var {
        int k, t, s;
    };
    std::vector<Var> maps, homs;
    for (int k = -6; k <= 6; ++k) {
        for (int t = 0; t < y.size(k); ++t)
            for (int s = 0; s < x.size(k); ++s)
                if (y.term(k)[t] <= x.term(k)[s]) maps.push_back({k, t, s});
        for (int t = 0; t < y.size(k - 1); ++t)
            for (int s = 0; s < x.size(k); ++s)
                if (y.term(k - 1)[t] <= x.term(k)[s]) homs.push_back({k, t, s});
    }
    auto build = [&](const std::vector<Var>& vars, int mask, int dk) {
        ChainMap f;
        for (size_t i = 0; i < vars.size(); ++i) {
            if (!((mask >> i) & 1)) continue;
            const Var& v = vars[i];
            auto it = f.comp.find(v.k);
            if (it == f.comp.end())
                it = f.comp.emplace(v.k, Matrix(y.size(v.k + dk), x.size(v.k), 2)).first;
            it->second.at(v.t, v.s) = 1;
        }
        return f;
    };
    auto key = [&](const ChainMap& f) {
        std::vector<int> out;
        for (int k = -6; k <= 6; ++k) {
            Matrix m = f.at(k, y.size(k), x.size(k), 2);
            for (int i = 0; i < m.rows(); ++i)
                for (int j = 0; j < m.cols(); ++j) out.push_back(m.at(i, j));
        }
        return out;
    };
    int chains = 0;
    for (int mask = 0; mask < (1 << maps.size()); ++mask)
        chains += is_chain_map(build(maps, mask, 0), x, y, 2);
    std::set<std::vector<int>> nulls;
    for (int mask = 0; mask < (1 << homs.size()); ++mask) {
        ChainMap s = build(homs, mask, -1);
        ChainMap h;
        for (int k = -6; k <= 6; ++k) {
            Matrix m = y.d(k - 1, 2) * s.at(k, y.size(k - 1), x.size(k), 2) +
                       s.at(k + 1, y.size(k), x.size(k + 1), 2) * x.d(k, 2);
            if (m.rows() && m.cols()) h.comp[k] = m;
        }
        nulls.insert(key(h));
    }
    return static_cast<int>(std::lround(std::log2(static_cast<double>(chains) / nulls.size())));
}

}  // namespace

TEST(Derived, IdentityBasis) {
    DbEngine e(3, 101);
    for (const Stalk& s : stalks(3, -1, 1)) {
        ASSERT_EQ(e.hom_degree(s, s), 0);
        EXPECT_EQ(e.compose_constant(s, s, s), 1);
    }
}

TEST(Derived, DegreeTwoVanishes) {
    DbEngine e(3, 101);
    for (const Stalk& s : stalks(3, 0, 0)) EXPECT_FALSE(e.has_hom(s, s.shifted(2)));
}

TEST(Derived, HomAgreesWithChainMapBruteForce) {
    DbEngine e(3, 2);
    auto all = stalks(3, -2, 2);
    for (const Stalk& a : all)
        for (const Stalk& b : all) {
            int brute = brute_k_hom_dim(e.canonical(a), e.canonical(b));
            EXPECT_EQ(e.has_hom(a, b) ? 1 : 0, brute) << a.str() << " -> " << b.str();
        }
}

TEST(Derived, HomMatchesModuleHomAndExt) {
    int n = 4;
    DbEngine e(n, 101);
    for (const Stalk& a : stalks(n, 0, 0))
        for (const Stalk& b : stalks(n, 0, 0)) {
            EXPECT_EQ(e.has_hom(a, b), hom_basis(n, 101, a.iv, b.iv).has_value());
            EXPECT_EQ(e.has_hom(a, b.shifted(1)), ext1_dim(n, 101, a.iv, b.iv) == 1);
        }
}

TEST(Derived, DegreeZeroCompositionMatchesModuleMaps) {
    int n = 4, p = 101;
    DbEngine e(n, p);
    auto all = stalks(n, 0, 0);
    for (const Stalk& a : all)
        for (const Stalk& b : all)
            for (const Stalk& c : all) {
                auto f = hom_basis(n, p, a.iv, b.iv), g = hom_basis(n, p, b.iv, c.iv);
                if (!f || !g) continue;
                ModuleMap gf = g->compose_after(*f);
                int expected = gf.is_zero() ? 0 : 1;
                if (expected) {
                    auto can = hom_basis(n, p, a.iv, c.iv);
                    ASSERT_TRUE(can.has_value());
                    for (int v = 1; v <= n; ++v) ASSERT_EQ(gf.at(v), can->at(v));
                }
                EXPECT_EQ(e.compose_constant(a, b, c), expected);
            }
}

TEST(Derived, ExtTimesExtVanishes) {
    DbEngine e(3, 101);
    auto all = stalks(3, 0, 0);
    for (const Stalk& a : all)
        for (const Stalk& b : all)
            for (const Stalk& c : all) EXPECT_EQ(e.compose_constant(a, b.shifted(1), c.shifted(2)), 0);
}

TEST(Derived, ConeOfIdentityAndZero) {
    DbEngine e(3, 101);
    DbObject x{Stalk{0, {1, 2}}}, y{Stalk{0, {2, 3}}};
    EXPECT_TRUE(e.cone(e.identity(x)).c.empty());
    auto tri = e.cone(DbMorphism::zero(x, y));
    EXPECT_EQ(tri.c, normal_form({y[0], x[0].shifted(1)}));
}

TEST(Derived, ConeOfModuleMapIsCokernelPlusShiftedKernel) {
    for (int n = 2; n <= 4; ++n) {
        int p = 101;
        DbEngine e(n, p);
        for (const Stalk& a : stalks(n, 0, 0))
            for (const Stalk& b : stalks(n, 0, 0)) {
                auto g = hom_basis(n, p, a.iv, b.iv);
                if (!g) continue;
                DbObject expect;
                for (auto [iv, m] : decompose(cokernel(*g)))
                    for (int i = 0; i < m; ++i) expect.push_back(Stalk{0, iv});
                for (auto [iv, m] : decompose(kernel(*g)))
                    for (int i = 0; i < m; ++i) expect.push_back(Stalk{1, iv});
                DbMorphism f = DbMorphism::zero({a}, {b});
                f.coef[0][0] = 1;
                EXPECT_EQ(e.cone(f).c, normal_form(expect)) << a.str() << " " << b.str();
            }
    }
}

TEST(Derived, TriangleMapsComposeToZeroAndRotate) {
    int n = 3, p = 101;
    DbEngine e(n, p);
    auto all = stalks(n, 0, 1);
    for (const Stalk& a : all)
        for (const Stalk& b : all) {
            if (!e.has_hom(a, b)) continue;
            DbMorphism f = DbMorphism::zero({a}, {b});
            f.coef[0][0] = 1;
            DbTriangle t = e.cone(f);
            DbMorphism gf = e.compose(t.g, t.f);
            DbMorphism hg = e.compose(t.h, t.g);
            for (auto& row : gf.coef)
                for (int v : row) EXPECT_EQ(v, 0);
            for (auto& row : hg.coef)
                for (int v : row) EXPECT_EQ(v, 0);
            // Rotation: cone(g) is isomorphic to Σx.
            EXPECT_EQ(e.cone(t.g).c, DbObject{a.shifted(1)});
        }
}

TEST(Derived, ConeIsAdditive) {
    DbEngine e(3, 101);
    Stalk a{0, {1, 2}}, b{0, {1, 1}}, c{0, {2, 3}}, d{0, {2, 2}};
    DbMorphism f = DbMorphism::zero({a}, {b});
    f.coef[0][0] = 1;
    DbMorphism g = DbMorphism::zero({c}, {d});
    g.coef[0][0] = 1;
    DbMorphism fg = DbMorphism::zero({a, c}, {b, d});
    fg.coef[0][0] = 1;
    fg.coef[1][1] = 1;
    DbObject sum = e.cone(f).c;
    for (const Stalk& s : e.cone(g).c) sum.push_back(s);
    EXPECT_EQ(e.cone(fg).c, normal_form(sum));
}

TEST(Derived, TauCommutesWithShiftAndIsFractionalCY) {
    for (int n = 1; n <= 5; ++n) {
        DbEngine e(n, 101);
        for (const Stalk& s : stalks(n, -1, 1)) {
            EXPECT_EQ(e.tau(s.shifted(1)), e.tau(s).shifted(1));
            Stalk t = s;
            for (int i = 0; i <= n; ++i) t = e.tau(t);
            EXPECT_EQ(t, s.shifted(-2)) << s.str();
            EXPECT_EQ(e.tau_inverse(e.tau(s)), s);
        }
    }
}

TEST(Derived, SerreDualityAtDimensionLevel) {
    int n = 4;
    DbEngine e(n, 101);
    auto all = stalks(n, -2, 2);
    for (const Stalk& a : all)
        for (const Stalk& b : all) EXPECT_EQ(e.has_hom(a, b), e.has_hom(b, e.serre(a)));
}

TEST(Derived, SerreOnProjectivesGivesInjectives) {
    int n = 4;
    DbEngine e(n, 101);
    for (int i = 1; i <= n; ++i) EXPECT_EQ(e.serre(Stalk{0, {i, n}}), (Stalk{0, {1, i}}));
}

TEST(Derived, SerreIsAStrictFunctorOnBasisMorphisms) {
    int n = 3, p = 101;
    DbEngine e(n, p);
    Fp f{p};
    auto all = stalks(n, 0, 1);
    for (const Stalk& a : all)
        for (const Stalk& b : all)
            for (const Stalk& c : all) {
                int k = e.compose_constant(a, b, c);
                if (!k) continue;
                int lhs = f.mul(f.mul(e.serre_scalar(a, b), e.serre_scalar(b, c)),
                                e.compose_constant(e.serre(a), e.serre(b), e.serre(c)));
                int rhs = f.mul(k, e.serre_scalar(a, c));
                EXPECT_EQ(lhs, rhs);
            }
}
