#pragma once

#include <cstddef>
#include <initializer_list>
#include <vector>

namespace tgideal {

using Vector = std::vector<double>;

/// Column-major dense real matrix, the carrier type for every operator in
/// the library. Construction from raw entries rejects NaN and Inf.
class DenseMatrix {
public:
    DenseMatrix() = default;
    DenseMatrix(std::size_t rows, std::size_t cols);  // zero-initialized
    DenseMatrix(std::size_t rows, std::size_t cols, Vector entries);

    static DenseMatrix identity(std::size_t n);
    static DenseMatrix from_rows(std::initializer_list<std::initializer_list<double>> rows);
    static DenseMatrix column(const Vector& v);
    static DenseMatrix diagonal(const Vector& d);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool is_square() const noexcept { return rows_ == cols_; }

    double& operator()(std::size_t i, std::size_t j) { return data_[j * rows_ + i]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[j * rows_ + i]; }

    const Vector& entries() const noexcept { return data_; }
    double* data() noexcept { return data_.data(); }
    const double* data() const noexcept { return data_.data(); }

    DenseMatrix transposed() const;
    DenseMatrix block(std::size_t row0, std::size_t col0, std::size_t nrows,
                      std::size_t ncols) const;
    Vector col(std::size_t j) const;
    void set_col(std::size_t j, const Vector& v);

    DenseMatrix& operator+=(const DenseMatrix& o);
    DenseMatrix& operator-=(const DenseMatrix& o);
    DenseMatrix& operator*=(double s);

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    Vector data_;
};

DenseMatrix operator+(DenseMatrix a, const DenseMatrix& b);
DenseMatrix operator-(DenseMatrix a, const DenseMatrix& b);
DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix operator*(double s, DenseMatrix a);
Vector operator*(const DenseMatrix& a, const Vector& v);

DenseMatrix hstack(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix vstack(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix symmetrized(const DenseMatrix& a);

double frobenius_norm(const DenseMatrix& m);
double max_abs(const DenseMatrix& m);
/// max |a_ij - a_ji| over the whole matrix (0 for non-square is undefined;
/// callers must pass a square matrix).
double symmetry_defect(const DenseMatrix& m);
bool all_finite(const DenseMatrix& m);

double dot(const Vector& a, const Vector& b);
double norm2(const Vector& v);
Vector add(Vector a, const Vector& b);
Vector sub(Vector a, const Vector& b);
Vector scaled(Vector v, double s);

}  // namespace tgideal
