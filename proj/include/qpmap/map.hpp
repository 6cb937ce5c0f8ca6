#ifndef QPMAP_MAP_HPP
#define QPMAP_MAP_HPP

#include "qpmap/errors.hpp"
#include "qpmap/matrix.hpp"
#include "qpmap/rational.hpp"

#include <cstddef>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <vector>

namespace qpmap {

/// A quasipolynomial map
///
///     x_i(t+1) = x_i(t) * exp(lambda_i + sum_j A_ij * prod_k x_k(t)^B_jk)
///
/// on the positive orthant, with exact rational lambda (n), A (n x m) and
/// B (m x n). Immutable after construction. Double copies of the matrices are
/// cached for the dynamics.
///
/// Maps built through `create` are strict: no zero column in A and no zero row
/// in B. `create_relaxed` skips that check and exists for intermediate
/// systems produced by coordinate changes and canonicalization.
class QPMap {
public:
    static QPMap create(RationalVector lambda, RationalMatrix a, RationalMatrix b);
    static QPMap create_relaxed(RationalVector lambda, RationalMatrix a, RationalMatrix b);

    std::size_t n() const { return lambda_.size(); }
    std::size_t m() const { return a_.cols(); }
    bool relaxed() const { return relaxed_; }

    const RationalVector& lambda() const { return lambda_; }
    const RationalMatrix& a() const { return a_; }
    const RationalMatrix& b() const { return b_; }

    /// M = (lambda | A), n x (m+1).
    RationalMatrix m_matrix() const;

    std::span<const double> lambda_d() const { return lambda_d_; }
    const Matrix& a_d() const { return a_d_; }
    const Matrix& b_d() const { return b_d_; }

    friend bool operator==(const QPMap& x, const QPMap& y) {
        return x.lambda_ == y.lambda_ && x.a_ == y.a_ && x.b_ == y.b_;
    }

private:
    QPMap(RationalVector lambda, RationalMatrix a, RationalMatrix b, bool relaxed);

    RationalVector lambda_;
    RationalMatrix a_;
    RationalMatrix b_;
    bool relaxed_ = false;
    std::vector<double> lambda_d_;
    Matrix a_d_;
    Matrix b_d_;
};

/// Strictly positive point of the state space.
class State {
public:
    State() = default;
    /// Throws NonPositiveState (index = first offending component).
    explicit State(std::vector<double> x);
    State(std::initializer_list<double> x) : State(std::vector<double>(x)) {}

    std::size_t size() const { return x_.size(); }
    double operator[](std::size_t i) const { return x_[i]; }
    std::span<const double> values() const { return x_; }

    friend bool operator==(const State&, const State&) = default;

private:
    std::vector<double> x_;
};

std::ostream& operator<<(std::ostream& os, const State& x);

struct Trajectory {
    long long t0 = 0;
    std::vector<State> states;  // states[k] holds x(t0 + k)
};

/// Raised by `iterate` when a step fails. Carries the valid prefix.
class IterationError : public Error {
public:
    IterationError(const Error& cause, long long failing_time, Trajectory partial);
    const Trajectory& partial() const { return partial_; }
    long long failing_time() const { return failing_time_; }

private:
    long long failing_time_;
    Trajectory partial_;
};

/// q_j = prod_k x_k^B_jk, evaluated as exp(sum_k B_jk ln x_k).
std::vector<double> quasimonomials(const QPMap& map, const State& x);

/// phi_i = lambda_i + sum_j A_ij q_j(x).
std::vector<double> phi(const QPMap& map, const State& x);

/// One forward step; NumericOverflow when a component leaves (0, DBL_MAX].
State step(const QPMap& map, const State& x);

/// T+1 states starting at x0 (t0 = 0). Throws IterationError on failure.
Trajectory iterate(const QPMap& map, const State& x0, std::size_t steps);

/// Analytic Jacobian of `step`:
/// L_ij = (delta_ij + x_i d_j phi_i) exp(phi_i),
/// d_j phi_i = sum_p A_ip B_pj q_p / x_j.
Matrix jacobian(const QPMap& map, const State& x);

}  // namespace qpmap

#endif  // QPMAP_MAP_HPP
