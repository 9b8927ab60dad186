#include <gtest/gtest.h>

#include <cstdio>
#include <random>

#include "json.hpp"

#include "minuscy/orbitcat.hpp"

using namespace minuscy;

namespace {

const OrbitCategory& cat(int n, int w) {
    static std::map<std::pair<int, int>, OrbitCategory> cache;
    auto it = cache.find({n, w});
    if (it == cache.end()) it = cache.emplace(std::make_pair(n, w), OrbitCategory::build(n, w, 101)).first;
    return it->second;
}

const std::vector<std::pair<int, int>> kSuite = {{1, 1}, {2, 1}, {3, 1}, {2, 2}, {3, 2}, {4, 1}};

OrbitMorphism random_morphism(const OrbitCategory& c, const std::vector<int>& s, const std::vector<int>& t,
                              std::mt19937& rng) {
    OrbitMorphism m = c.zero(s, t);
    for (auto& row : m.coef)
        for (auto& cell : row)
            for (int& v : cell) v = static_cast<int>(rng() % c.prime());
    return m;
}

// Rank of Hom(q, f) as a linear map between flattened coordinates.
int hom_rank(const OrbitCategory& c, int q, const OrbitMorphism& f) {
    std::vector<std::vector<int>> cols;
    for (size_t s = 0; s < f.src.size(); ++s)
        for (int k = 0; k < c.hom_dim(q, f.src[s]); ++k) {
            OrbitMorphism e = c.zero({q}, f.src);
            e.coef[s][0][k] = 1;
            cols.push_back(c.flatten(c.compose(f, e)));
        }
    int rows = c.hom_dim(std::vector<int>{q}, f.tgt);
    Matrix m(rows, static_cast<int>(cols.size()), c.prime());
    for (size_t j = 0; j < cols.size(); ++j)
        for (int i = 0; i < rows; ++i) m.at(i, static_cast<int>(j)) = cols[j][i];
    return rank(m);
}

// Hom(q, -) applied to a triangle must be exact at Y, C and ΣX.
void expect_exact(const OrbitCategory& c, const TriangleRecord& t) {
    OrbitMorphism sf = c.shift(t.f, 1);
    for (int q = 0; q < c.size(); ++q) {
        int dy = c.hom_dim(std::vector<int>{q}, t.y);
        int dc = c.hom_dim(std::vector<int>{q}, t.c);
        int dsx = c.hom_dim(std::vector<int>{q}, t.h.tgt);
        int rf = hom_rank(c, q, t.f), rg = hom_rank(c, q, t.g), rh = hom_rank(c, q, t.h), rsf = hom_rank(c, q, sf);
        EXPECT_EQ(dy - rg, rf) << "exact at Y for q=" << c.name(q);
        EXPECT_EQ(dc - rh, rg) << "exact at C for q=" << c.name(q);
        EXPECT_EQ(dsx - rsf, rh) << "exact at ΣX for q=" << c.name(q);
    }
}

}  // namespace

TEST(OrbitCategory, OrbitCountsMatchClosedForm) {
    EXPECT_EQ(cat(3, 1).size(), 9);
    EXPECT_EQ(cat(1, 2).size(), 2);
    for (auto [n, w] : kSuite) EXPECT_EQ(cat(n, w).size(), n * ((w + 1) * (n + 1) - 2) / 2) << n << "," << w;
}

TEST(OrbitCategory, FortyIndecomposablesForRankFiveWeightTwo) { EXPECT_EQ(cat(5, 2).size(), 40); }

TEST(OrbitCategory, HomMatchesSumOverOrbitDegrees) {
    // Independent oracle: homotopy classes between canonical complexes,
    // summed over a wide range of orbit degrees.
    for (auto [n, w] : std::vector<std::pair<int, int>>{{2, 1}, {3, 1}, {2, 2}}) {
        const OrbitCategory& c = cat(n, w);
        const DbEngine& e = c.engine();
        for (int x = 0; x < c.size(); ++x)
            for (int y = 0; y < c.size(); ++y) {
                int d = 0;
                for (int i = -6; i <= 6; ++i) {
                    KHom h(e.canonical(c.rep(x)), e.canonical(c.apply_f(c.rep(y), i)), c.prime());
                    d += h.dim();
                }
                EXPECT_EQ(c.hom_dim(x, y), d) << c.name(x) << " " << c.name(y);
            }
    }
}

TEST(OrbitCategory, BricksSerreSymmetryAndCalabiYau) {
    for (auto [n, w] : kSuite) {
        const OrbitCategory& c = cat(n, w);
        EXPECT_LE(c.max_hom_dim(), 1);
        for (int x = 0; x < c.size(); ++x) {
            EXPECT_EQ(c.hom_dim(x, x), 1);
            EXPECT_EQ(c.serre(x), c.sigma_power(x, -w));
            EXPECT_EQ(c.tau(c.sigma(x)), c.sigma(c.tau(x)));
            EXPECT_EQ(c.act(Functor::SerreInverse, c.act(Functor::Serre, x)), x);
            EXPECT_EQ(c.act(Functor::TauInverse, c.act(Functor::Tau, x)), x);
            for (int y = 0; y < c.size(); ++y) EXPECT_EQ(c.hom_dim(x, y), c.hom_dim(y, c.serre(x)));
        }
    }
}

TEST(OrbitCategory, CompositionIsAssociativeAndUnital) {
    std::mt19937 rng(7);
    for (auto [n, w] : kSuite) {
        const OrbitCategory& c = cat(n, w);
        std::uniform_int_distribution<int> pick(0, c.size() - 1);
        for (int trial = 0; trial < 200; ++trial) {
            std::vector<int> a{pick(rng)}, b{pick(rng), pick(rng)}, d{pick(rng)}, e{pick(rng), pick(rng)};
            auto f = random_morphism(c, a, b, rng);
            auto g = random_morphism(c, b, d, rng);
            auto h = random_morphism(c, d, e, rng);
            EXPECT_EQ(c.flatten(c.compose(h, c.compose(g, f))), c.flatten(c.compose(c.compose(h, g), f)));
            EXPECT_EQ(c.flatten(c.compose(c.identity(b), f)), c.flatten(f));
            EXPECT_EQ(c.flatten(c.compose(f, c.identity(a))), c.flatten(f));
        }
    }
}

TEST(OrbitCategory, ShiftIsAFunctorOnMorphisms) {
    std::mt19937 rng(11);
    for (auto [n, w] : kSuite) {
        const OrbitCategory& c = cat(n, w);
        std::uniform_int_distribution<int> pick(0, c.size() - 1);
        for (int trial = 0; trial < 100; ++trial) {
            std::vector<int> a{pick(rng)}, b{pick(rng)}, d{pick(rng)};
            auto f = random_morphism(c, a, b, rng);
            auto g = random_morphism(c, b, d, rng);
            EXPECT_EQ(c.flatten(c.shift(c.compose(g, f), 1)), c.flatten(c.compose(c.shift(g, 1), c.shift(f, 1))));
            EXPECT_EQ(c.flatten(c.shift(c.shift(f, 1), -1)), c.flatten(f));
        }
    }
}

TEST(OrbitCategory, ConesOfIdentityAndZero) {
    const OrbitCategory& c = cat(3, 1);
    for (int x = 0; x < c.size(); ++x) {
        auto t = c.cone(c.identity({x}));
        EXPECT_TRUE(t.c.empty());
        for (int y = 0; y < c.size(); ++y) {
            auto z = c.cone(c.zero({x}, {y}));
            ObjectVector want(c.size(), 0);
            ++want[y];
            ++want[c.sigma(x)];
            EXPECT_EQ(to_vector(c, z.c), want);
        }
    }
}

TEST(OrbitCategory, LiftedTrianglesAreExact) {
    std::mt19937 rng(3);
    for (auto [n, w] : kSuite) {
        const OrbitCategory& c = cat(n, w);
        for (int x = 0; x < c.size(); ++x)
            for (int y = 0; y < c.size(); ++y)
                for (int k = 0; k < c.hom_dim(x, y); ++k) {
                    auto f = c.scale(c.basis_morphism(x, y, k), 1 + static_cast<int>(rng() % 100));
                    auto t = c.cone(f);
                    ASSERT_FALSE(t.symbolic);
                    EXPECT_TRUE(c.compose(t.g, t.f).is_zero());
                    EXPECT_TRUE(c.compose(t.h, t.g).is_zero());
                    EXPECT_TRUE(c.compose(c.shift(t.f, 1), t.h).is_zero());
                    expect_exact(c, t);
                }
    }
}

TEST(OrbitCategory, ConesOfSumsMatchHomFingerprint) {
    std::mt19937 rng(5);
    for (auto [n, w] : std::vector<std::pair<int, int>>{{3, 1}, {4, 1}, {3, 2}}) {
        const OrbitCategory& c = cat(n, w);
        std::uniform_int_distribution<int> pick(0, c.size() - 1);
        int lifted = 0, iterated = 0;
        for (int trial = 0; trial < 300; ++trial) {
            std::vector<int> src{pick(rng), pick(rng)}, tgt{pick(rng), pick(rng)};
            OrbitMorphism f = random_morphism(c, src, tgt, rng);
            auto t = c.cone(f);
            EXPECT_EQ(c.object_fingerprint(to_vector(c, t.c)), c.hom_fingerprint(f));
            EXPECT_TRUE(c.compose(t.g, t.f).is_zero());
            auto it = c.iterated_cone(f);
            EXPECT_EQ(to_vector(c, it.c), to_vector(c, t.c));
            EXPECT_TRUE(c.compose(it.g, it.f).is_zero());
            if (t.symbolic) {
                ++iterated;
            } else {
                ++lifted;
                expect_exact(c, t);
            }
        }
        EXPECT_GT(lifted, 0);
        EXPECT_EQ(lifted + iterated, 300);
    }
}

TEST(OrbitCategory, CartanCertificate) {
    // A_2 modulo Σ^2τ = τ^{-2}: four objects on a cycle, each with a map to
    // the next, so C = I + P and the alternating vector lies in the kernel.
    const OrbitCategory& c = cat(2, 1);
    EXPECT_FALSE(c.cartan_certified());
    ObjectVector odd(4, 0), even(4, 0);
    for (int x = 0; x < 4; ++x) {
        int next = -1;
        for (int y = 0; y < 4; ++y)
            if (y != x && c.hom_dim(x, y)) next = y;
        ASSERT_GE(next, 0);
        EXPECT_EQ(c.hom_dim(next, x), 0);
    }
    for (int x = 0, k = 0; k < 4; ++k) {
        (k % 2 ? odd : even)[x] = 1;
        for (int y = 0; y < 4; ++y)
            if (y != x && c.hom_dim(x, y)) {
                x = y;
                break;
            }
    }
    EXPECT_EQ(c.object_fingerprint(odd), c.object_fingerprint(even));
    EXPECT_THROW(c.cone_fingerprint(c.zero({0}, {1})), Error);

    const OrbitCategory& d = cat(2, 2);
    EXPECT_TRUE(d.cartan_certified());
    for (int x = 0; x < d.size(); ++x)
        for (int y = 0; y < d.size(); ++y)
            for (int k = 0; k < d.hom_dim(x, y); ++k) {
                auto f = d.basis_morphism(x, y, k);
                EXPECT_EQ(d.cone_fingerprint(f), to_vector(d, d.cone(f).c));
            }
}

TEST(OrbitCategory, JsonRoundTrip) {
    const OrbitCategory& c = cat(3, 1);
    std::string s = c.to_json();
    OrbitCategory d = OrbitCategory::from_json(s);
    EXPECT_EQ(d.to_json(), s);
    EXPECT_EQ(d.size(), 9);
    EXPECT_EQ(d.cone(d.zero({0}, {1})).c, c.cone(c.zero({0}, {1})).c);
}

namespace {

std::string resign(nlohmann::json j) {
    j.erase("checksum");
    std::string body = j.dump();
    unsigned long long h = 1469598103934665603ULL;
    for (unsigned char ch : body) {
        h ^= ch;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", h);
    j["checksum"] = buf;
    return j.dump();
}

ErrorCode load_error(const std::string& s) {
    try {
        OrbitCategory::from_json(s);
    } catch (const Error& e) {
        return e.code();
    }
    return ErrorCode::Usage;
}

}  // namespace

TEST(OrbitCategory, SnapshotValidation) {
    const OrbitCategory& c = cat(2, 2);
    auto j = nlohmann::json::parse(c.to_json());
    auto tampered = j;
    tampered["prime"] = 103;
    EXPECT_EQ(load_error(tampered.dump()), ErrorCode::ChecksumMismatch);

    auto singular = j;
    for (auto& row : singular["cartan"]) row = std::vector<int>(c.size(), 1);
    EXPECT_EQ(load_error(resign(singular)), ErrorCode::CartanSingular);

    // Drop one Hom space from both tables so only Serre symmetry breaks.
    auto asym = j;
    std::string key;
    for (auto it = asym["hom"].begin(); it != asym["hom"].end(); ++it)
        if (it.key() != "0,0") {
            key = it.key();
            break;
        }
    int x = 0, y = 0;
    std::sscanf(key.c_str(), "%d,%d", &x, &y);
    asym["hom"].erase(key);
    asym["cartan"][x][y] = 0;
    try {
        OrbitCategory::from_json(resign(asym));
        ADD_FAILURE() << "asymmetric snapshot accepted";
    } catch (const Error& e) {
        EXPECT_TRUE(e.code() == ErrorCode::InvariantViolation || e.code() == ErrorCode::CartanSingular);
        if (e.code() == ErrorCode::InvariantViolation) EXPECT_NE(std::string(e.what()).find("x"), std::string::npos);
    }
    EXPECT_EQ(load_error("{not json"), ErrorCode::SchemaViolation);
}
