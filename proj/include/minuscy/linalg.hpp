#pragma once

// Exact dense linear algebra over a prime field F_p.

#include <cstdint>
#include <optional>
#include <vector>

#include "minuscy/error.hpp"

namespace minuscy {

bool is_prime(int p);

// Residue class modulo a prime. Arithmetic between elements of different
// fields throws.
class FieldElement {
public:
    FieldElement(long long value, int p);

    int value() const { return v_; }
    int modulus() const { return p_; }

    FieldElement operator+(const FieldElement& o) const;
    FieldElement operator-(const FieldElement& o) const;
    FieldElement operator*(const FieldElement& o) const;
    FieldElement operator-() const;
    FieldElement inverse() const;
    bool operator==(const FieldElement& o) const { return v_ == o.v_ && p_ == o.p_; }

private:
    void check_same(const FieldElement& o) const;
    int v_;
    int p_;
};

// Scalar helpers on raw residues; callers keep values in [0, p).
struct Fp {
    int p;

    int norm(long long x) const {
        long long r = x % p;
        return static_cast<int>(r < 0 ? r + p : r);
    }
    int add(int a, int b) const { int s = a + b; return s >= p ? s - p : s; }
    int sub(int a, int b) const { int s = a - b; return s < 0 ? s + p : s; }
    int mul(int a, int b) const { return static_cast<int>((static_cast<long long>(a) * b) % p); }
    int neg(int a) const { return a == 0 ? 0 : p - a; }
    int inv(int a) const;
    // Symmetric lift to (-p/2, p/2], used when printing small structure constants.
    long long lift(int a) const { return a > p / 2 ? static_cast<long long>(a) - p : a; }
};

class Matrix {
public:
    Matrix() = default;
    Matrix(int rows, int cols, int p);

    static Matrix identity(int n, int p);
    static Matrix from_rows(const std::vector<std::vector<long long>>& rows, int p);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    int prime() const { return p_; }
    Fp field() const { return Fp{p_}; }

    int& at(int r, int c) { return data_[static_cast<size_t>(r) * cols_ + c]; }
    int at(int r, int c) const { return data_[static_cast<size_t>(r) * cols_ + c]; }
    void set(int r, int c, long long v) { at(r, c) = field().norm(v); }

    bool is_zero() const;
    bool operator==(const Matrix& o) const;
    bool operator!=(const Matrix& o) const { return !(*this == o); }

    Matrix operator*(const Matrix& o) const;
    Matrix operator+(const Matrix& o) const;
    Matrix operator-(const Matrix& o) const;
    Matrix scaled(int s) const;
    Matrix transposed() const;
    std::vector<int> apply(const std::vector<int>& x) const;

    Matrix column(int c) const;
    Matrix submatrix(const std::vector<int>& rows, const std::vector<int>& cols) const;
    // Horizontal/vertical concatenation; empty operands are allowed.
    static Matrix hcat(const Matrix& a, const Matrix& b);
    static Matrix vcat(const Matrix& a, const Matrix& b);

private:
    int rows_ = 0;
    int cols_ = 0;
    int p_ = 2;
    std::vector<int> data_;
};

struct Echelon {
    Matrix rref;
    std::vector<int> pivots;  // pivot column of each nonzero row
};

Echelon row_echelon(const Matrix& m);
int rank(const Matrix& m);
// Columns of the result span ker(m).
Matrix kernel_basis(const Matrix& m);
int cokernel_dim(const Matrix& m);
// Some x with m x = rhs, or nullopt.
std::optional<std::vector<int>> solve(const Matrix& m, const std::vector<int>& rhs);
// Columns forming a basis of the column space of m.
Matrix image_basis(const Matrix& m);
std::optional<Matrix> inverse(const Matrix& m);

}  // namespace minuscy
