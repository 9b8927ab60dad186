#include "minuscy/linalg.hpp"

#include <string>

namespace minuscy {

const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::Dimension: return "DimensionError";
        case ErrorCode::NotPrime: return "NotPrime";
        case ErrorCode::CartanSingular: return "CartanSingular";
        case ErrorCode::WindowUncertified: return "WindowUncertified";
        case ErrorCode::NonIntegralSolution: return "NonIntegralSolution";
        case ErrorCode::NotOrthogonal: return "NotOrthogonal";
        case ErrorCode::NotInClosure: return "NotInClosure";
        case ErrorCode::InvariantViolation: return "InvariantViolation";
        case ErrorCode::SchemaViolation: return "SchemaViolation";
        case ErrorCode::ChecksumMismatch: return "ChecksumMismatch";
        case ErrorCode::Usage: return "UsageError";
    }
    return "Error";
}

bool is_prime(int p) {
    if (p < 2) return false;
    for (long long d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

int Fp::inv(int a) const {
    if (a == 0) throw Error(ErrorCode::Dimension, "inverse of zero");
    long long t = 0, nt = 1, r = p, nr = a;
    while (nr != 0) {
        long long q = r / nr;
        long long tmp = t - q * nt;
        t = nt;
        nt = tmp;
        tmp = r - q * nr;
        r = nr;
        nr = tmp;
    }
    return norm(t);
}

FieldElement::FieldElement(long long value, int p) : p_(p) {
    if (!is_prime(p)) throw Error(ErrorCode::NotPrime, std::to_string(p) + " is not prime");
    v_ = Fp{p}.norm(value);
}

void FieldElement::check_same(const FieldElement& o) const {
    if (o.p_ != p_) throw Error(ErrorCode::Dimension, "mixed moduli");
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
    check_same(o);
    return FieldElement(Fp{p_}.add(v_, o.v_), p_);
}

FieldElement FieldElement::operator-(const FieldElement& o) const {
    check_same(o);
    return FieldElement(Fp{p_}.sub(v_, o.v_), p_);
}

FieldElement FieldElement::operator*(const FieldElement& o) const {
    check_same(o);
    return FieldElement(Fp{p_}.mul(v_, o.v_), p_);
}

FieldElement FieldElement::operator-() const { return FieldElement(Fp{p_}.neg(v_), p_); }

FieldElement FieldElement::inverse() const { return FieldElement(Fp{p_}.inv(v_), p_); }

Matrix::Matrix(int rows, int cols, int p) : rows_(rows), cols_(cols), p_(p) {
    if (rows < 0 || cols < 0) throw Error(ErrorCode::Dimension, "negative matrix size");
    data_.assign(static_cast<size_t>(rows) * cols, 0);
}

Matrix Matrix::identity(int n, int p) {
    Matrix m(n, n, p);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1 % p;
    return m;
}

Matrix Matrix::from_rows(const std::vector<std::vector<long long>>& rows, int p) {
    int r = static_cast<int>(rows.size());
    int c = r ? static_cast<int>(rows[0].size()) : 0;
    Matrix m(r, c, p);
    for (int i = 0; i < r; ++i) {
        if (static_cast<int>(rows[i].size()) != c) throw Error(ErrorCode::Dimension, "ragged rows");
        for (int j = 0; j < c; ++j) m.set(i, j, rows[i][j]);
    }
    return m;
}

bool Matrix::is_zero() const {
    for (int v : data_)
        if (v) return false;
    return true;
}

bool Matrix::operator==(const Matrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && p_ == o.p_ && data_ == o.data_;
}

Matrix Matrix::operator*(const Matrix& o) const {
    if (cols_ != o.rows_) throw Error(ErrorCode::Dimension, "matrix product shape mismatch");
    if (p_ != o.p_) throw Error(ErrorCode::Dimension, "matrix product over different fields");
    Matrix out(rows_, o.cols_, p_);
    for (int i = 0; i < rows_; ++i) {
        for (int k = 0; k < cols_; ++k) {
            int a = at(i, k);
            if (!a) continue;
            for (int j = 0; j < o.cols_; ++j) {
                int b = o.at(k, j);
                if (b) out.at(i, j) = static_cast<int>((out.at(i, j) + static_cast<long long>(a) * b) % p_);
            }
        }
    }
    return out;
}

Matrix Matrix::operator+(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw Error(ErrorCode::Dimension, "matrix sum shape mismatch");
    Matrix out(*this);
    Fp f{p_};
    for (size_t i = 0; i < data_.size(); ++i) out.data_[i] = f.add(data_[i], o.data_[i]);
    return out;
}

Matrix Matrix::operator-(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw Error(ErrorCode::Dimension, "matrix difference shape mismatch");
    Matrix out(*this);
    Fp f{p_};
    for (size_t i = 0; i < data_.size(); ++i) out.data_[i] = f.sub(data_[i], o.data_[i]);
    return out;
}

Matrix Matrix::scaled(int s) const {
    Matrix out(*this);
    Fp f{p_};
    int sv = f.norm(s);
    for (int& v : out.data_) v = f.mul(v, sv);
    return out;
}

Matrix Matrix::transposed() const {
    Matrix out(cols_, rows_, p_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) out.at(j, i) = at(i, j);
    return out;
}

std::vector<int> Matrix::apply(const std::vector<int>& x) const {
    if (static_cast<int>(x.size()) != cols_) throw Error(ErrorCode::Dimension, "vector length mismatch");
    std::vector<int> y(rows_, 0);
    for (int i = 0; i < rows_; ++i) {
        long long s = 0;
        for (int j = 0; j < cols_; ++j) s += static_cast<long long>(at(i, j)) * x[j];
        y[i] = static_cast<int>(s % p_);
    }
    return y;
}

Matrix Matrix::column(int c) const {
    Matrix out(rows_, 1, p_);
    for (int i = 0; i < rows_; ++i) out.at(i, 0) = at(i, c);
    return out;
}

Matrix Matrix::submatrix(const std::vector<int>& rows, const std::vector<int>& cols) const {
    Matrix out(static_cast<int>(rows.size()), static_cast<int>(cols.size()), p_);
    for (size_t i = 0; i < rows.size(); ++i)
        for (size_t j = 0; j < cols.size(); ++j) out.at(static_cast<int>(i), static_cast<int>(j)) = at(rows[i], cols[j]);
    return out;
}

Matrix Matrix::hcat(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_) throw Error(ErrorCode::Dimension, "hcat row mismatch");
    Matrix out(a.rows_, a.cols_ + b.cols_, a.p_);
    for (int i = 0; i < a.rows_; ++i) {
        for (int j = 0; j < a.cols_; ++j) out.at(i, j) = a.at(i, j);
        for (int j = 0; j < b.cols_; ++j) out.at(i, a.cols_ + j) = b.at(i, j);
    }
    return out;
}

Matrix Matrix::vcat(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.cols_) throw Error(ErrorCode::Dimension, "vcat column mismatch");
    Matrix out(a.rows_ + b.rows_, a.cols_, a.p_);
    for (int i = 0; i < a.rows_; ++i)
        for (int j = 0; j < a.cols_; ++j) out.at(i, j) = a.at(i, j);
    for (int i = 0; i < b.rows_; ++i)
        for (int j = 0; j < b.cols_; ++j) out.at(a.rows_ + i, j) = b.at(i, j);
    return out;
}

Echelon row_echelon(const Matrix& m) {
    Echelon e{m, {}};
    Matrix& a = e.rref;
    Fp f = a.field();
    int rows = a.rows(), cols = a.cols();
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int piv = -1;
        for (int i = r; i < rows; ++i)
            if (a.at(i, c)) { piv = i; break; }
        if (piv < 0) continue;
        if (piv != r)
            for (int j = 0; j < cols; ++j) std::swap(a.at(piv, j), a.at(r, j));
        int inv = f.inv(a.at(r, c));
        for (int j = c; j < cols; ++j) a.at(r, j) = f.mul(a.at(r, j), inv);
        for (int i = 0; i < rows; ++i) {
            if (i == r || !a.at(i, c)) continue;
            int factor = a.at(i, c);
            for (int j = c; j < cols; ++j)
                if (a.at(r, j)) a.at(i, j) = f.sub(a.at(i, j), f.mul(factor, a.at(r, j)));
        }
        e.pivots.push_back(c);
        ++r;
    }
    return e;
}

int rank(const Matrix& m) {
    if (m.rows() == 0 || m.cols() == 0) return 0;
    return static_cast<int>(row_echelon(m).pivots.size());
}

Matrix kernel_basis(const Matrix& m) {
    Echelon e = row_echelon(m);
    int cols = m.cols();
    std::vector<int> is_pivot(cols, -1);
    for (size_t r = 0; r < e.pivots.size(); ++r) is_pivot[e.pivots[r]] = static_cast<int>(r);
    std::vector<int> free;
    for (int c = 0; c < cols; ++c)
        if (is_pivot[c] < 0) free.push_back(c);
    Fp f = m.field();
    Matrix k(cols, static_cast<int>(free.size()), m.prime());
    for (size_t j = 0; j < free.size(); ++j) {
        int fc = free[j];
        k.at(fc, static_cast<int>(j)) = 1;
        for (size_t r = 0; r < e.pivots.size(); ++r)
            k.at(e.pivots[r], static_cast<int>(j)) = f.neg(e.rref.at(static_cast<int>(r), fc));
    }
    return k;
}

int cokernel_dim(const Matrix& m) { return m.rows() - rank(m); }

std::optional<std::vector<int>> solve(const Matrix& m, const std::vector<int>& rhs) {
    if (static_cast<int>(rhs.size()) != m.rows()) throw Error(ErrorCode::Dimension, "rhs length mismatch");
    Matrix aug(m.rows(), m.cols() + 1, m.prime());
    for (int i = 0; i < m.rows(); ++i) {
        for (int j = 0; j < m.cols(); ++j) aug.at(i, j) = m.at(i, j);
        aug.at(i, m.cols()) = m.field().norm(rhs[i]);
    }
    Echelon e = row_echelon(aug);
    std::vector<int> x(m.cols(), 0);
    for (size_t r = 0; r < e.pivots.size(); ++r) {
        int c = e.pivots[r];
        if (c == m.cols()) return std::nullopt;
        x[c] = e.rref.at(static_cast<int>(r), m.cols());
    }
    return x;
}

Matrix image_basis(const Matrix& m) {
    Echelon e = row_echelon(m);
    return m.submatrix([&] {
        std::vector<int> r(m.rows());
        for (int i = 0; i < m.rows(); ++i) r[i] = i;
        return r;
    }(), e.pivots);
}

std::optional<Matrix> inverse(const Matrix& m) {
    if (m.rows() != m.cols()) throw Error(ErrorCode::Dimension, "inverse of non-square matrix");
    int n = m.rows();
    Echelon e = row_echelon(Matrix::hcat(m, Matrix::identity(n, m.prime())));
    for (int i = 0; i < n; ++i)
        if (i >= static_cast<int>(e.pivots.size()) || e.pivots[i] != i) return std::nullopt;
    std::vector<int> rows(n), cols(n);
    for (int i = 0; i < n; ++i) {
        rows[i] = i;
        cols[i] = n + i;
    }
    return e.rref.submatrix(rows, cols);
}

}  // namespace minuscy
