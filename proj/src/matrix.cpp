#include "tgideal/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "tgideal/errors.hpp"

namespace tgideal {

namespace {

void require_same_shape(const DenseMatrix& a, const DenseMatrix& b, const char* op) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw DimensionMismatchError(std::string(op) + ": shapes " + std::to_string(a.rows()) +
                                     "x" + std::to_string(a.cols()) + " vs " +
                                     std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
    }
}

}  // namespace

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols, Vector entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows_ * cols_) {
        throw DimensionMismatchError("entry count " + std::to_string(data_.size()) +
                                     " does not match " + std::to_string(rows_) + "x" +
                                     std::to_string(cols_));
    }
    for (double v : data_) {
        if (!std::isfinite(v)) {
            throw InvalidArgumentError("matrix entries must be finite");
        }
    }
}

DenseMatrix DenseMatrix::identity(std::size_t n) {
    DenseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

DenseMatrix DenseMatrix::from_rows(std::initializer_list<std::initializer_list<double>> rows) {
    const std::size_t r = rows.size();
    const std::size_t c = r == 0 ? 0 : rows.begin()->size();
    DenseMatrix m(r, c);
    std::size_t i = 0;
    for (const auto& row : rows) {
        if (row.size() != c) throw DimensionMismatchError("ragged row list");
        std::size_t j = 0;
        for (double v : row) m(i, j++) = v;
        ++i;
    }
    return m;
}

DenseMatrix DenseMatrix::column(const Vector& v) {
    DenseMatrix m(v.size(), 1);
    for (std::size_t i = 0; i < v.size(); ++i) m(i, 0) = v[i];
    return m;
}

DenseMatrix DenseMatrix::diagonal(const Vector& d) {
    DenseMatrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
}

DenseMatrix DenseMatrix::transposed() const {
    DenseMatrix t(cols_, rows_);
    for (std::size_t j = 0; j < cols_; ++j)
        for (std::size_t i = 0; i < rows_; ++i) t(j, i) = (*this)(i, j);
    return t;
}

DenseMatrix DenseMatrix::block(std::size_t row0, std::size_t col0, std::size_t nrows,
                               std::size_t ncols) const {
    if (row0 + nrows > rows_ || col0 + ncols > cols_) {
        throw DimensionMismatchError("block exceeds matrix bounds");
    }
    DenseMatrix b(nrows, ncols);
    for (std::size_t j = 0; j < ncols; ++j)
        for (std::size_t i = 0; i < nrows; ++i) b(i, j) = (*this)(row0 + i, col0 + j);
    return b;
}

Vector DenseMatrix::col(std::size_t j) const {
    Vector v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
}

void DenseMatrix::set_col(std::size_t j, const Vector& v) {
    if (v.size() != rows_) throw DimensionMismatchError("set_col: wrong length");
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
}

DenseMatrix& DenseMatrix::operator+=(const DenseMatrix& o) {
    require_same_shape(*this, o, "add");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
}

DenseMatrix& DenseMatrix::operator-=(const DenseMatrix& o) {
    require_same_shape(*this, o, "sub");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
    return *this;
}

DenseMatrix& DenseMatrix::operator*=(double s) {
    for (double& v : data_) v *= s;
    return *this;
}

DenseMatrix operator+(DenseMatrix a, const DenseMatrix& b) { return a += b; }
DenseMatrix operator-(DenseMatrix a, const DenseMatrix& b) { return a -= b; }
DenseMatrix operator*(double s, DenseMatrix a) { return a *= s; }

DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.cols() != b.rows()) {
        throw DimensionMismatchError("matmul: " + std::to_string(a.rows()) + "x" +
                                     std::to_string(a.cols()) + " times " +
                                     std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
    }
    DenseMatrix c(a.rows(), b.cols());
    for (std::size_t j = 0; j < b.cols(); ++j) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const double bkj = b(k, j);
            if (bkj == 0.0) continue;
            for (std::size_t i = 0; i < a.rows(); ++i) c(i, j) += a(i, k) * bkj;
        }
    }
    return c;
}

Vector operator*(const DenseMatrix& a, const Vector& v) {
    if (a.cols() != v.size()) throw DimensionMismatchError("matvec: size mismatch");
    Vector y(a.rows(), 0.0);
    for (std::size_t j = 0; j < a.cols(); ++j) {
        const double vj = v[j];
        if (vj == 0.0) continue;
        for (std::size_t i = 0; i < a.rows(); ++i) y[i] += a(i, j) * vj;
    }
    return y;
}

DenseMatrix hstack(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.cols() == 0) return b;
    if (b.cols() == 0) return a;
    if (a.rows() != b.rows()) throw DimensionMismatchError("hstack: row mismatch");
    DenseMatrix c(a.rows(), a.cols() + b.cols());
    for (std::size_t j = 0; j < a.cols(); ++j)
        for (std::size_t i = 0; i < a.rows(); ++i) c(i, j) = a(i, j);
    for (std::size_t j = 0; j < b.cols(); ++j)
        for (std::size_t i = 0; i < b.rows(); ++i) c(i, a.cols() + j) = b(i, j);
    return c;
}

DenseMatrix vstack(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.rows() == 0) return b;
    if (b.rows() == 0) return a;
    if (a.cols() != b.cols()) throw DimensionMismatchError("vstack: column mismatch");
    DenseMatrix c(a.rows() + b.rows(), a.cols());
    for (std::size_t j = 0; j < a.cols(); ++j) {
        for (std::size_t i = 0; i < a.rows(); ++i) c(i, j) = a(i, j);
        for (std::size_t i = 0; i < b.rows(); ++i) c(a.rows() + i, j) = b(i, j);
    }
    return c;
}

DenseMatrix symmetrized(const DenseMatrix& a) {
    if (!a.is_square()) throw DimensionMismatchError("symmetrized: matrix not square");
    DenseMatrix s(a.rows(), a.cols());
    for (std::size_t j = 0; j < a.cols(); ++j)
        for (std::size_t i = 0; i < a.rows(); ++i) s(i, j) = 0.5 * (a(i, j) + a(j, i));
    return s;
}

double frobenius_norm(const DenseMatrix& m) {
    double s = 0.0;
    for (double v : m.entries()) s += v * v;
    return std::sqrt(s);
}

double max_abs(const DenseMatrix& m) {
    double s = 0.0;
    for (double v : m.entries()) s = std::max(s, std::abs(v));
    return s;
}

double symmetry_defect(const DenseMatrix& m) {
    double d = 0.0;
    for (std::size_t j = 0; j < m.cols(); ++j)
        for (std::size_t i = 0; i < j; ++i) d = std::max(d, std::abs(m(i, j) - m(j, i)));
    return d;
}

bool all_finite(const DenseMatrix& m) {
    for (double v : m.entries())
        if (!std::isfinite(v)) return false;
    return true;
}

double dot(const Vector& a, const Vector& b) {
    if (a.size() != b.size()) throw DimensionMismatchError("dot: size mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double norm2(const Vector& v) { return std::sqrt(dot(v, v)); }

Vector add(Vector a, const Vector& b) {
    if (a.size() != b.size()) throw DimensionMismatchError("add: size mismatch");
    for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
    return a;
}

Vector sub(Vector a, const Vector& b) {
    if (a.size() != b.size()) throw DimensionMismatchError("sub: size mismatch");
    for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
    return a;
}

Vector scaled(Vector v, double s) {
    for (double& x : v) x *= s;
    return v;
}

}  // namespace tgideal
