#ifndef QPMAP_MATRIX_HPP
#define QPMAP_MATRIX_HPP

#include "qpmap/rational.hpp"

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <vector>

namespace qpmap {

/// Row-major matrix with exact rational entries.
class RationalMatrix {
public:
    RationalMatrix() = default;
    RationalMatrix(std::size_t rows, std::size_t cols);
    RationalMatrix(std::initializer_list<std::initializer_list<Rational>> rows);

    static RationalMatrix identity(std::size_t n);
    static RationalMatrix diagonal(std::span<const Rational> entries);
    static RationalMatrix column(std::span<const Rational> entries);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    RationalVector row(std::size_t r) const;
    RationalVector col(std::size_t c) const;

    bool is_zero() const;
    bool row_is_zero(std::size_t r) const;
    bool col_is_zero(std::size_t c) const;

    /// Horizontal concatenation (this | right).
    RationalMatrix hcat(const RationalMatrix& right) const;

    friend bool operator==(const RationalMatrix& a, const RationalMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> data_;
};

RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b);
RationalVector operator*(const RationalMatrix& a, std::span<const Rational> v);
RationalMatrix scaled(const RationalMatrix& a, const Rational& factor);

/// Exact rank via fraction-free (Bareiss) elimination on an integer-scaled copy.
std::size_t rank(const RationalMatrix& a);

/// Exact determinant via Bareiss elimination. Requires a square matrix.
Rational determinant(const RationalMatrix& a);

/// Exact inverse via fraction-free Gauss-Jordan; nullopt when singular.
std::optional<RationalMatrix> inverse(const RationalMatrix& a);

/// Dense double matrix for Jacobians and residuals.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    static Matrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<const double> data() const { return data_; }

    Matrix transposed() const;

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
double max_abs(const Matrix& a);

/// Determinant by LU with partial pivoting after equilibrating each row by its
/// largest magnitude; row scales are multiplied back at the end.
double determinant(const Matrix& a);

std::vector<double> to_double(std::span<const Rational> v);
Matrix to_double(const RationalMatrix& a);

}  // namespace qpmap

#endif  // QPMAP_MATRIX_HPP
