#include <gtest/gtest.h>

#include <random>

#include "minuscy/linalg.hpp"

using namespace minuscy;

TEST(Linalg, EmptyMatrixHasRankZero) { EXPECT_EQ(rank(Matrix(0, 0, 101)), 0); }

TEST(Linalg, IdentityRank) { EXPECT_EQ(rank(Matrix::identity(3, 101)), 3); }

TEST(Linalg, DependentRowsHandComputed) {
    // Row two is twice row one, so one pivot survives elimination.
    EXPECT_EQ(rank(Matrix::from_rows({{1, 2}, {2, 4}}, 101)), 1);
}

TEST(Linalg, KernelOfIdentityIsEmpty) { EXPECT_EQ(kernel_basis(Matrix::identity(2, 101)).cols(), 0); }

TEST(Linalg, CokernelOfZero) { EXPECT_EQ(cokernel_dim(Matrix(3, 2, 101)), 3); }

TEST(Linalg, InconsistentSystemHasNoSolution) {
    EXPECT_FALSE(solve(Matrix::from_rows({{1, 0}, {0, 0}}, 101), {1, 1}).has_value());
}

TEST(Linalg, ShapeMismatchThrows) {
    EXPECT_THROW(solve(Matrix::identity(2, 101), {1, 2, 3}), Error);
    EXPECT_THROW(Matrix(2, 3, 101) * Matrix(2, 3, 101), Error);
}

TEST(Linalg, NonPrimeModulusRejected) { EXPECT_THROW(FieldElement(1, 6), Error); }

TEST(Linalg, FieldElementArithmetic) {
    FieldElement a(3, 7), b(5, 7);
    EXPECT_EQ((a + b).value(), 1);
    EXPECT_EQ((a * b).value(), 1);
    EXPECT_EQ((a * a.inverse()).value(), 1);
    EXPECT_THROW(a + FieldElement(1, 5), Error);
}

class RandomMatrices : public ::testing::TestWithParam<int> {};

TEST_P(RandomMatrices, RankNullityAndSolve) {
    int p = GetParam();
    std::mt19937 rng(17 + p);
    for (int trial = 0; trial < 300; ++trial) {
        int r = static_cast<int>(rng() % 7), c = static_cast<int>(rng() % 7);
        Matrix m(r, c, p);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < c; ++j)
                if (rng() % 3) m.at(i, j) = static_cast<int>(rng() % p);
        Matrix k = kernel_basis(m);
        ASSERT_EQ(rank(m) + k.cols(), c);
        ASSERT_EQ(rank(k), k.cols());
        if (r) ASSERT_TRUE((m * k).is_zero());
        std::vector<int> x(c);
        for (int& v : x) v = static_cast<int>(rng() % p);
        auto rhs = m.apply(x);
        auto sol = solve(m, rhs);
        ASSERT_TRUE(sol.has_value());
        ASSERT_EQ(m.apply(*sol), rhs);
        if (r == c) {
            auto inv = inverse(m);
            ASSERT_EQ(inv.has_value(), rank(m) == r);
            if (inv) ASSERT_EQ(m * *inv, Matrix::identity(r, p));
        }
    }
}

INSTANTIATE_TEST_SUITE_P(Primes, RandomMatrices, ::testing::Values(2, 3, 101));
