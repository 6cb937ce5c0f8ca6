#ifndef QPMAP_TRANSFORM_HPP
#define QPMAP_TRANSFORM_HPP

#include "qpmap/map.hpp"

#include <cstddef>
#include <optional>

namespace qpmap {

/// Quasimonomial transformation x_i = prod_j y_j^C_ij with det C != 0.
class QMT {
public:
    /// Throws SingularMatrix when det C = 0, DimensionMismatch when not square.
    explicit QMT(RationalMatrix c);

    std::size_t n() const { return c_.rows(); }
    const RationalMatrix& c() const { return c_; }
    const RationalMatrix& c_inv() const { return c_inv_; }

private:
    RationalMatrix c_;
    RationalMatrix c_inv_;
};

inline QMT new_qmt(RationalMatrix c) { return QMT(std::move(c)); }

/// Raised when a transformation leaves the strict QP class. The raw result is
/// kept as a relaxed map.
class DegenerateResultError : public Error {
public:
    DegenerateResultError(const std::string& what, QPMap raw)
        : Error(ErrorCode::DegenerateResult, what), raw_(std::move(raw)) {}
    const QPMap& raw() const { return raw_; }

private:
    QPMap raw_;
};

/// lambda' = C^-1 lambda, A' = C^-1 A, B' = B C, always relaxed.
QPMap apply_qmt_relaxed(const QPMap& map, const QMT& qmt);

/// Strict version of apply_qmt_relaxed: throws DegenerateResultError if B'
/// has a zero row or A' a zero column.
QPMap apply_qmt(const QPMap& map, const QMT& qmt);

/// x_i = prod_j y_j^C_ij.
State push_state(const QMT& qmt, const State& y);

/// y_j = prod_i x_i^(C^-1)_ji.
State pull_state(const QMT& qmt, const State& x);

/// B * (lambda | A), m x (m+1); identical across a QMT equivalence class.
RationalMatrix class_invariant(const QPMap& map);

/// m-dimensional Lotka-Volterra map with lambda_c = B lambda, A_c = B A and
/// B_c = I. Throws DegenerateResultError when B A has a zero column.
QPMap lv_canonical(const QPMap& map);

/// [[I, I], [0, -I]] of size 2s; its own inverse.
QMT solver_qmt(std::size_t s);

}  // namespace qpmap

#endif  // QPMAP_TRANSFORM_HPP
