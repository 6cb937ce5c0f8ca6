#include "qpmap/matrix.hpp"

#include "qpmap/errors.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace qpmap {

RationalMatrix::RationalMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

RationalMatrix::RationalMatrix(std::initializer_list<std::initializer_list<Rational>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_) {
            throw Error(ErrorCode::DimensionMismatch, "ragged matrix literal");
        }
        data_.insert(data_.end(), r.begin(), r.end());
    }
}

RationalMatrix RationalMatrix::identity(std::size_t n) {
    RationalMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        m(i, i) = 1;
    }
    return m;
}

RationalMatrix RationalMatrix::diagonal(std::span<const Rational> entries) {
    RationalMatrix m(entries.size(), entries.size());
    for (std::size_t i = 0; i < entries.size(); ++i) {
        m(i, i) = entries[i];
    }
    return m;
}

RationalMatrix RationalMatrix::column(std::span<const Rational> entries) {
    RationalMatrix m(entries.size(), 1);
    for (std::size_t i = 0; i < entries.size(); ++i) {
        m(i, 0) = entries[i];
    }
    return m;
}

RationalVector RationalMatrix::row(std::size_t r) const {
    return RationalVector(data_.begin() + r * cols_, data_.begin() + (r + 1) * cols_);
}

RationalVector RationalMatrix::col(std::size_t c) const {
    RationalVector out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        out[r] = (*this)(r, c);
    }
    return out;
}

bool RationalMatrix::is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const Rational& v) { return qpmap::is_zero(v); });
}

bool RationalMatrix::row_is_zero(std::size_t r) const {
    for (std::size_t c = 0; c < cols_; ++c) {
        if (!qpmap::is_zero((*this)(r, c))) {
            return false;
        }
    }
    return true;
}

bool RationalMatrix::col_is_zero(std::size_t c) const {
    for (std::size_t r = 0; r < rows_; ++r) {
        if (!qpmap::is_zero((*this)(r, c))) {
            return false;
        }
    }
    return true;
}

RationalMatrix RationalMatrix::hcat(const RationalMatrix& right) const {
    if (rows_ != right.rows_) {
        throw Error(ErrorCode::DimensionMismatch, "hcat: row counts differ");
    }
    RationalMatrix out(rows_, cols_ + right.cols_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) {
            out(r, c) = (*this)(r, c);
        }
        for (std::size_t c = 0; c < right.cols_; ++c) {
            out(r, cols_ + c) = right(r, c);
        }
    }
    return out;
}

RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b) {
    if (a.cols() != b.rows()) {
        throw Error(ErrorCode::DimensionMismatch, "matrix product: inner dimensions differ");
    }
    RationalMatrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            if (is_zero(a(i, k))) {
                continue;
            }
            for (std::size_t j = 0; j < b.cols(); ++j) {
                out(i, j) += a(i, k) * b(k, j);
            }
        }
    }
    return out;
}

RationalVector operator*(const RationalMatrix& a, std::span<const Rational> v) {
    if (a.cols() != v.size()) {
        throw Error(ErrorCode::DimensionMismatch, "matrix-vector product: dimensions differ");
    }
    RationalVector out(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            out[i] += a(i, k) * v[k];
        }
    }
    return out;
}

RationalMatrix scaled(const RationalMatrix& a, const Rational& factor) {
    RationalMatrix out = a;
    for (std::size_t r = 0; r < a.rows(); ++r) {
        for (std::size_t c = 0; c < a.cols(); ++c) {
            out(r, c) *= factor;
        }
    }
    return out;
}

namespace {

using IntegerRows = std::vector<std::vector<mpz_class>>;

// Each row multiplied by the lcm of its denominators. Row scaling changes
// neither rank nor the row space.
IntegerRows integer_rows(const RationalMatrix& a, std::vector<mpz_class>* row_scales = nullptr) {
    IntegerRows out(a.rows(), std::vector<mpz_class>(a.cols()));
    for (std::size_t r = 0; r < a.rows(); ++r) {
        mpz_class scale = 1;
        for (std::size_t c = 0; c < a.cols(); ++c) {
            mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), a(r, c).get_den_mpz_t());
        }
        for (std::size_t c = 0; c < a.cols(); ++c) {
            out[r][c] = a(r, c).get_num() * (scale / a(r, c).get_den());
        }
        if (row_scales != nullptr) {
            row_scales->push_back(scale);
        }
    }
    return out;
}

struct BareissResult {
    std::size_t rank = 0;
    int sign = 1;
    mpz_class last_pivot = 1;
};

// In-place Bareiss forward elimination; rows beyond the rank end up zero.
BareissResult bareiss(IntegerRows& m, std::size_t cols) {
    BareissResult res;
    const std::size_t rows = m.size();
    mpz_class prev = 1;
    std::size_t pivot_row = 0;
    for (std::size_t c = 0; c < cols && pivot_row < rows; ++c) {
        std::size_t sel = pivot_row;
        while (sel < rows && m[sel][c] == 0) {
            ++sel;
        }
        if (sel == rows) {
            continue;
        }
        if (sel != pivot_row) {
            std::swap(m[sel], m[pivot_row]);
            res.sign = -res.sign;
        }
        const mpz_class& pivot = m[pivot_row][c];
        for (std::size_t r = pivot_row + 1; r < rows; ++r) {
            for (std::size_t k = c + 1; k < cols; ++k) {
                mpz_class v = pivot * m[r][k] - m[r][c] * m[pivot_row][k];
                mpz_divexact(m[r][k].get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
            }
            m[r][c] = 0;
        }
        prev = pivot;
        ++pivot_row;
    }
    res.rank = pivot_row;
    res.last_pivot = prev;
    return res;
}

}  // namespace

std::size_t rank(const RationalMatrix& a) {
    IntegerRows m = integer_rows(a);
    return bareiss(m, a.cols()).rank;
}

Rational determinant(const RationalMatrix& a) {
    if (a.rows() != a.cols()) {
        throw Error(ErrorCode::DimensionMismatch, "determinant of a non-square matrix");
    }
    if (a.rows() == 0) {
        return 1;
    }
    std::vector<mpz_class> scales;
    IntegerRows m = integer_rows(a, &scales);
    BareissResult res = bareiss(m, a.cols());
    if (res.rank < a.rows()) {
        return 0;
    }
    mpz_class scale_product = 1;
    for (const auto& s : scales) {
        scale_product *= s;
    }
    Rational det(res.sign * res.last_pivot, scale_product);
    det.canonicalize();
    return det;
}

std::optional<RationalMatrix> inverse(const RationalMatrix& a) {
    if (a.rows() != a.cols()) {
        throw Error(ErrorCode::DimensionMismatch, "inverse of a non-square matrix");
    }
    const std::size_t n = a.rows();
    std::vector<mpz_class> scales;
    IntegerRows m = integer_rows(a, &scales);
    // Augment with the identity; row r of the augmented block carries the
    // scale applied to row r of a, so the result is (S a)^-1 = a^-1 S^-1.
    for (std::size_t r = 0; r < n; ++r) {
        m[r].resize(2 * n);
        m[r][n + r] = 1;
    }

    // Fraction-free Gauss-Jordan: after step k every entry is a minor of the
    // augmented matrix, so the division by the previous pivot is exact.
    mpz_class prev = 1;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t sel = k;
        while (sel < n && m[sel][k] == 0) {
            ++sel;
        }
        if (sel == n) {
            return std::nullopt;
        }
        std::swap(m[sel], m[k]);
        const mpz_class pivot = m[k][k];
        for (std::size_t r = 0; r < n; ++r) {
            if (r == k) {
                continue;
            }
            const mpz_class factor = m[r][k];
            for (std::size_t c = 0; c < 2 * n; ++c) {
                if (c == k) {
                    continue;
                }
                mpz_class v = pivot * m[r][c] - factor * m[k][c];
                mpz_divexact(m[r][c].get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
            }
            m[r][k] = 0;
        }
        prev = pivot;
    }

    // Now m = [d I | d (S a)^-1] up to per-row pivot values on the diagonal.
    RationalMatrix out(n, n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            Rational v(m[r][n + c], m[r][r]);
            v.canonicalize();
            out(r, c) = v * scales[c];
        }
    }
    return out;
}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        m(i, i) = 1.0;
    }
    return m;
}

Matrix Matrix::transposed() const {
    Matrix out(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) {
            out(c, r) = (*this)(r, c);
        }
    }
    return out;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) {
        throw Error(ErrorCode::DimensionMismatch, "matrix product: inner dimensions differ");
    }
    Matrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const double aik = a(i, k);
            for (std::size_t j = 0; j < b.cols(); ++j) {
                out(i, j) += aik * b(k, j);
            }
        }
    }
    return out;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw Error(ErrorCode::DimensionMismatch, "matrix difference: shapes differ");
    }
    Matrix out(a.rows(), a.cols());
    for (std::size_t r = 0; r < a.rows(); ++r) {
        for (std::size_t c = 0; c < a.cols(); ++c) {
            out(r, c) = a(r, c) - b(r, c);
        }
    }
    return out;
}

double max_abs(const Matrix& a) {
    double best = 0.0;
    for (double v : a.data()) {
        if (std::isnan(v)) {
            return v;
        }
        best = std::max(best, std::abs(v));
    }
    return best;
}

double determinant(const Matrix& a) {
    if (a.rows() != a.cols()) {
        throw Error(ErrorCode::DimensionMismatch, "determinant of a non-square matrix");
    }
    const std::size_t n = a.rows();
    Matrix lu = a;
    double log_scale = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
        double big = 0.0;
        for (std::size_t c = 0; c < n; ++c) {
            big = std::max(big, std::abs(lu(r, c)));
        }
        if (big == 0.0) {
            return 0.0;
        }
        for (std::size_t c = 0; c < n; ++c) {
            lu(r, c) /= big;
        }
        log_scale += std::log(big);
    }

    double det = 1.0;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        for (std::size_t r = k + 1; r < n; ++r) {
            if (std::abs(lu(r, k)) > std::abs(lu(piv, k))) {
                piv = r;
            }
        }
        if (lu(piv, k) == 0.0) {
            return 0.0;
        }
        if (piv != k) {
            for (std::size_t c = 0; c < n; ++c) {
                std::swap(lu(piv, c), lu(k, c));
            }
            det = -det;
        }
        det *= lu(k, k);
        for (std::size_t r = k + 1; r < n; ++r) {
            const double f = lu(r, k) / lu(k, k);
            for (std::size_t c = k + 1; c < n; ++c) {
                lu(r, c) -= f * lu(k, c);
            }
        }
    }
    return det * std::exp(log_scale);
}

std::vector<double> to_double(std::span<const Rational> v) {
    std::vector<double> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        out[i] = v[i].get_d();
    }
    return out;
}

Matrix to_double(const RationalMatrix& a) {
    Matrix out(a.rows(), a.cols());
    for (std::size_t r = 0; r < a.rows(); ++r) {
        for (std::size_t c = 0; c < a.cols(); ++c) {
            out(r, c) = a(r, c).get_d();
        }
    }
    return out;
}

}  // namespace qpmap
