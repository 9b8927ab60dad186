#include <gtest/gtest.h>

#include "minuscy/oracles.hpp"

using namespace minuscy;

TEST(IntervalCone, IdentityAndElementaryCases) {
    EXPECT_EQ(interval_cone({2, 3}, {2, 3}, 0), DbObject{});
    // Inclusion M[2,3] -> M[1,3] has cokernel M[1,1].
    EXPECT_EQ(interval_cone({2, 3}, {1, 3}, 0), (DbObject{Stalk{0, {1, 1}}}));
    // Projection M[1,3] -> M[1,2] has kernel M[3,3], shifted once in the cone.
    EXPECT_EQ(interval_cone({1, 3}, {1, 2}, 0), (DbObject{Stalk{1, {3, 3}}}));
    // The extension of M[1,1] by M[2,2] has middle term M[1,2].
    EXPECT_EQ(interval_cone({1, 1}, {2, 2}, 1), (DbObject{Stalk{1, {1, 2}}}));
    EXPECT_FALSE(interval_cone({1, 2}, {3, 3}, 0).has_value());
    EXPECT_FALSE(interval_cone({2, 2}, {1, 1}, 1).has_value());
    EXPECT_FALSE(interval_cone({1, 1}, {1, 1}, 2).has_value());
}

TEST(IntervalCone, ExistenceMatchesDerivedHom) {
    for (int n = 1; n <= 5; ++n) {
        DbEngine e(n, 101);
        for (int a = 1; a <= n; ++a)
            for (int b = a; b <= n; ++b)
                for (int c = 1; c <= n; ++c)
                    for (int d = c; d <= n; ++d)
                        for (int r = 0; r <= 1; ++r) {
                            Stalk x{0, {a, b}}, y{r, {c, d}};
                            bool has = e.hom_degree(x, y).has_value();
                            EXPECT_EQ(interval_cone(x.iv, y.iv, r).has_value(), has) << n << x.str() << y.str();
                        }
    }
}

TEST(IntervalCone, AgreesWithEngineCones) {
    for (auto [n, w] : std::vector<std::pair<int, int>>{{2, 1}, {3, 1}, {2, 2}, {3, 2}, {4, 1}, {5, 2}, {4, 3}}) {
        auto c = OrbitCategory::build(n, w, 101);
        for (int x = 0; x < c.size(); ++x)
            for (int y = 0; y < c.size(); ++y)
                for (int k = 0; k < c.hom_dim(x, y); ++k) {
                    auto f = c.scale(c.basis_morphism(x, y, k), 3);
                    EXPECT_EQ(to_vector(c, c.cone(f).c), interval_cone(c, x, y, k))
                        << n << "," << w << " " << c.name(x) << " -> " << c.name(y);
                    if (c.cartan_certified()) EXPECT_EQ(c.cone_fingerprint(f), interval_cone(c, x, y, k));
                }
    }
}
