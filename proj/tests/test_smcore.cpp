#include <gtest/gtest.h>

#include <functional>
#include <map>
#include <set>

#include "minuscy/smcore.hpp"

using namespace minuscy;

namespace {

const OrbitCategory& cat(int n, int w, int p = 101) {
    static std::map<std::tuple<int, int, int>, OrbitCategory> cache;
    auto key = std::make_tuple(n, w, p);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, OrbitCategory::build(n, w, p)).first;
    return it->second;
}

const std::vector<std::pair<int, int>> kSuite = {{2, 1}, {3, 1}, {2, 2}, {3, 2}};

// All w-orthogonal collections, by plain backtracking over the Hom table.
std::vector<Collection> orthogonal_collections(const OrbitCategory& c, int w) {
    auto brick_ok = [&](int x) {
        if (c.hom_dim(x, x) != 1) return false;
        for (int k = 1; k < w; ++k)
            if (c.hom_dim(c.sigma_power(x, k), x)) return false;
        return true;
    };
    auto pair_ok = [&](int x, int y) {
        if (c.hom_dim(x, y) || c.hom_dim(y, x)) return false;
        for (int k = 1; k < w; ++k)
            if (c.hom_dim(c.sigma_power(x, k), y) || c.hom_dim(c.sigma_power(y, k), x)) return false;
        return true;
    };
    std::vector<Collection> out;
    Collection cur;
    std::function<void(int)> rec = [&](int from) {
        out.push_back(cur);
        for (int x = from; x < c.size(); ++x) {
            if (!brick_ok(x)) continue;
            bool ok = true;
            for (int y : cur) ok = ok && pair_ok(x, y);
            if (!ok) continue;
            cur.push_back(x);
            rec(x + 1);
            cur.pop_back();
        }
    };
    rec(0);
    return out;
}

// Extension closure by brute force: summands of the middle terms
// Σ^{-1}cone(h) of every h : y -> Σs, with y a sum of at most two known
// objects, over every coefficient vector of the field.
Collection brute_closure(const OrbitCategory& c, const Collection& s) {
    std::set<int> known(s.begin(), s.end());
    for (bool changed = true; changed;) {
        changed = false;
        std::vector<std::vector<int>> ys;
        for (int a : known) {
            ys.push_back({a});
            for (int b : known)
                if (b >= a) ys.push_back({a, b});
        }
        for (const auto& y : ys)
            for (int sg : s) {
                std::vector<int> tgt{c.sigma(sg)};
                int dim = c.hom_dim(y, tgt);
                int total = 1;
                for (int i = 0; i < dim; ++i) total *= c.prime();
                for (int code = 0; code < total; ++code) {
                    std::vector<int> v(dim);
                    for (int i = 0, r = code; i < dim; ++i, r /= c.prime()) v[i] = r % c.prime();
                    for (int q : c.cone(c.unflatten(y, tgt, v)).c)
                        changed = known.insert(c.sigma_inverse(q)).second || changed;
                }
            }
    }
    return Collection(known.begin(), known.end());
}

ObjectVector unit(const OrbitCategory& c, int x) {
    ObjectVector v(c.size(), 0);
    v[x] = 1;
    return v;
}

bool is_sms_by_riedtmann(const OrbitCategory& c, const Collection& s, int w, bool left) {
    return riedtmann_check(CategoryView::of(c), s, w, left).ok;
}

}  // namespace

TEST(Orthogonality, SingletonsAndShiftedPairs) {
    for (auto [n, w] : kSuite) {
        const auto& c = cat(n, w);
        auto v = CategoryView::of(c);
        for (int x = 0; x < c.size(); ++x) {
            EXPECT_TRUE(check_w_orthogonal(v, {x}, w).ok) << c.name(x);
            auto r = check_w_orthogonal(v, {x, c.sigma(x)}, w);
            EXPECT_FALSE(r.ok);
            EXPECT_FALSE(r.detail.empty());
        }
    }
    EXPECT_THROW(check_w_orthogonal(CategoryView::of(cat(2, 1)), {0}, 0), Error);
}

TEST(Closure, EmptyAndRigidSingletons) {
    const auto& c = cat(3, 1);
    ClosureTable empty(c, {});
    EXPECT_TRUE(empty.members().empty());
    EXPECT_EQ(empty.s_length(ObjectVector(c.size(), 0)), 0);
    for (int x = 0; x < c.size(); ++x) {
        if (c.hom_dim(x, c.sigma(x))) continue;
        ClosureTable t(c, {x});
        EXPECT_EQ(t.members(), Collection{x});
        EXPECT_EQ(t.s_length(unit(c, x)), 1);
    }
    EXPECT_THROW(ClosureTable(c, {0, 0}), Error);
}

TEST(Closure, NonOrthogonalCollectionIsRejected) {
    const auto& c = cat(3, 1);
    for (int x = 0; x < c.size(); ++x)
        for (int y = 0; y < c.size(); ++y)
            if (x != y && c.hom_dim(x, y)) {
                try {
                    ClosureTable t(c, {x, y});
                    FAIL() << "accepted a non-orthogonal pair";
                } catch (const Error& e) {
                    EXPECT_EQ(e.code(), ErrorCode::NotOrthogonal);
                }
                return;
            }
}

TEST(Closure, MatchesBruteForceOverSmallFields) {
    for (int p : {2, 3}) {
        for (auto [n, w] : kSuite) {
            const auto& c = cat(n, w, p);
            for (const auto& s : orthogonal_collections(c, 1)) {
                if (s.size() > 2) continue;
                ClosureTable t(c, s);
                ASSERT_EQ(t.members(), brute_closure(c, s)) << n << "," << w << " p=" << p << " " << format_collection(c, s);
            }
        }
    }
}

TEST(Closure, IndependentOfTheField) {
    for (auto [n, w] : kSuite) {
        const auto& c = cat(n, w);
        for (const auto& s : orthogonal_collections(c, 1)) {
            Collection m = ClosureTable(c, s).members();
            for (int p : {2, 3}) EXPECT_EQ(ClosureTable(cat(n, w, p), s).members(), m) << format_collection(c, s);
        }
    }
}

TEST(Closure, LengthDropsByOneAlongMapsFromGenerators) {
    for (auto [n, w] : kSuite) {
        const auto& c = cat(n, w);
        for (const auto& s : orthogonal_collections(c, 1)) {
            ClosureTable t(c, s);
            for (int x : t.members()) {
                int len = t.s_length(unit(c, x));
                for (int sg : s)
                    for (int k = 0; k < c.hom_dim(sg, x); ++k) {
                        auto cone = to_vector(c, c.cone(c.scale(c.basis_morphism(sg, x, k), 7)).c);
                        EXPECT_EQ(t.s_length(cone), len - 1) << format_collection(c, s) << " " << c.name(x);
                    }
                for (int y : t.members()) {
                    ObjectVector v = unit(c, x);
                    ++v[y];
                    EXPECT_LE(t.s_length(v), len + t.s_length(unit(c, y)));
                }
                auto series = t.composition_series(unit(c, x));
                ASSERT_EQ(static_cast<int>(series.size()), len);
                EXPECT_TRUE(std::binary_search(s.begin(), s.end(), series.front().first));
                EXPECT_EQ(series.back().second, unit(c, x));
            }
            int total = 0;
            for (int k = 1; k <= t.max_length(); ++k) total += static_cast<int>(t.level(k).size());
            EXPECT_EQ(total, static_cast<int>(t.members().size()));
            for (int x = 0; x < c.size(); ++x)
                if (!t.contains(x)) {
                    try {
                        t.s_length(unit(c, x));
                        FAIL() << "length of an object outside the closure";
                    } catch (const Error& e) {
                        EXPECT_EQ(e.code(), ErrorCode::NotInClosure);
                    }
                }
        }
    }
}

TEST(Perpendicular, EmptyCollectionAndRankThreeWeightOne) {
    const auto& c = cat(3, 1);
    EXPECT_EQ(static_cast<int>(perp_w(c, {}, 1).size()), c.size());
    // Singletons on the outer rows leave four objects; on the middle row only two.
    for (int x = 0; x < c.size(); ++x) {
        size_t expect = c.rep(x).iv.b - c.rep(x).iv.a == 1 ? 2u : 4u;
        EXPECT_EQ(perp_w(c, {x}, 1).size(), expect) << c.name(x);
    }
}

TEST(Perpendicular, LeftAndRightAgreeForOrthogonalCollections) {
    for (auto [n, w] : kSuite) {
        const auto& c = cat(n, w);
        for (const auto& s : orthogonal_collections(c, w)) EXPECT_EQ(perp_w(c, s, w), left_perp_w(c, s, w));
    }
}

TEST(Approximation, TrivialCases) {
    const auto& c = cat(3, 1);
    for (int x = 0; x < c.size(); ++x) {
        if (c.hom_dim(x, c.sigma(x))) continue;
        ClosureTable t(c, {x});
        for (int d = 0; d < c.size(); ++d) {
            auto tri = min_right_approx(c, t.members(), {d});
            if (d == x) {
                EXPECT_EQ(tri.x, std::vector<int>{d});
                EXPECT_TRUE(tri.c.empty());
            }
            if (c.hom_dim(x, d) == 0) {
                EXPECT_TRUE(tri.x.empty());
                EXPECT_EQ(tri.c, std::vector<int>{d});
            }
        }
    }
}

TEST(Approximation, HomFromGeneratorsIsIsomorphism) {
    for (auto [n, w] : kSuite) {
        const auto& c = cat(n, w);
        for (const auto& s : orthogonal_collections(c, 1)) {
            ClosureTable t(c, s);
            auto r = approximation_iso_check(c, t);
            EXPECT_TRUE(r.ok) << format_collection(c, s) << ": " << r.detail;
        }
    }
}

TEST(Approximation, LeftApproximationLandsInLeftPerp) {
    for (auto [n, w] : kSuite) {
        const auto& c = cat(n, w);
        for (const auto& s : orthogonal_collections(c, 1)) {
            ClosureTable t(c, s);
            Collection lp = left_perp(c, s, 0, 0);
            for (int d = 0; d < c.size(); ++d) {
                auto tri = min_left_approx(c, t.members(), {d});
                for (int z : tri.c) EXPECT_TRUE(std::binary_search(lp.begin(), lp.end(), c.sigma_inverse(z)));
                for (int a : tri.y) EXPECT_TRUE(t.contains(a));
            }
        }
    }
}

TEST(Approximation, LengthDropsAlongSubcollections) {
    for (auto [n, w] : {std::pair{3, 1}, std::pair{2, 2}, std::pair{3, 2}}) {
        const auto& c = cat(n, w);
        for (const auto& t : orthogonal_collections(c, 1))
            for (size_t mask = 0; mask < (1u << t.size()); ++mask) {
                Collection s;
                for (size_t i = 0; i < t.size(); ++i)
                    if (mask >> i & 1) s.push_back(t[i]);
                auto r = approximation_length_check(c, s, t);
                EXPECT_TRUE(r.ok) << format_collection(c, s) << " in " << format_collection(c, t) << ": " << r.detail;
            }
    }
}

TEST(Mutation, EmptyCollectionShifts) {
    const auto& c = cat(3, 2);
    ClosureTable t(c, {});
    for (int d = 0; d < c.size(); ++d) {
        EXPECT_EQ(right_mutation(c, t, d), unit(c, c.sigma(d)));
        EXPECT_EQ(left_mutation(c, t, d), unit(c, c.sigma_inverse(d)));
    }
}

TEST(Mutation, RoundTripOnPerpendicularCategory) {
    for (auto [n, w] : kSuite) {
        const auto& c = cat(n, w);
        for (const auto& s : orthogonal_collections(c, w)) {
            ClosureTable t(c, s);
            Collection z = perp_w(c, s, w);
            std::set<int> image;
            for (int d : z) {
                auto m = to_summands(right_mutation(c, t, d));
                ASSERT_EQ(m.size(), 1u) << format_collection(c, s) << " " << c.name(d);
                EXPECT_TRUE(std::binary_search(z.begin(), z.end(), m[0]));
                EXPECT_EQ(left_mutation(c, t, m[0]), unit(c, d));
                image.insert(m[0]);
            }
            EXPECT_EQ(image.size(), z.size());
        }
    }
}

TEST(MutationPair, PerpendicularCategoryIsMutationPair) {
    for (auto [n, w] : kSuite) {
        const auto& c = cat(n, w);
        for (const auto& s : orthogonal_collections(c, w)) {
            ClosureTable t(c, s);
            Collection z = perp_w(c, s, w);
            auto r = is_mutation_pair(c, t, z, z);
            EXPECT_TRUE(r.ok) << format_collection(c, s) << ": " << r.detail;
            if (!z.empty()) {
                Collection y(z.begin() + 1, z.end());
                auto bad = is_mutation_pair(c, t, z, y);
                EXPECT_FALSE(bad.ok);
                EXPECT_FALSE(bad.detail.empty());
            }
        }
    }
    const auto& c = cat(3, 1);
    Collection all;
    for (int x = 0; x < c.size(); ++x) all.push_back(x);
    EXPECT_TRUE(is_mutation_pair(c, ClosureTable(c, {}), all, all).ok);
}

TEST(SimpleMinded, AgreesWithRiedtmannConditions) {
    for (auto [n, w] : kSuite) {
        const auto& c = cat(n, w);
        int count = 0;
        for (const auto& s : orthogonal_collections(c, w)) {
            bool sms = is_w_sms(c, s, w).ok;
            EXPECT_EQ(sms, is_sms_by_riedtmann(c, s, w, true)) << format_collection(c, s);
            EXPECT_EQ(sms, is_sms_by_riedtmann(c, s, w, false)) << format_collection(c, s);
            count += sms;
            if (sms)
                for (size_t i = 0; i < s.size(); ++i) {
                    Collection sub = s;
                    sub.erase(sub.begin() + static_cast<long>(i));
                    EXPECT_FALSE(is_w_sms(c, sub, w).ok);
                }
        }
        EXPECT_GT(count, 0);
    }
    EXPECT_THROW(is_w_sms(cat(3, 1), {0, cat(3, 1).sigma(0)}, 1), Error);
}

TEST(SimpleMinded, ReverseOrderInclusion) {
    for (auto [n, w] : {std::pair{2, 2}, std::pair{3, 2}}) {
        const auto& c = cat(n, w);
        for (const auto& s : orthogonal_collections(c, w)) {
            auto r = reverse_order_check(c, s, w);
            EXPECT_TRUE(r.ok) << format_collection(c, s) << ": " << r.detail;
        }
    }
}
