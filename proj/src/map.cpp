#include "qpmap/map.hpp"

#include <cmath>
#include <ostream>
#include <string>
#include <utility>

namespace qpmap {

QPMap::QPMap(RationalVector lambda, RationalMatrix a, RationalMatrix b, bool relaxed)
    : lambda_(std::move(lambda)), a_(std::move(a)), b_(std::move(b)), relaxed_(relaxed) {
    const std::size_t n = lambda_.size();
    if (n == 0) {
        throw Error(ErrorCode::DimensionMismatch, "state dimension n must be at least 1");
    }
    if (a_.rows() != n) {
        throw Error(ErrorCode::DimensionMismatch,
                    "A has " + std::to_string(a_.rows()) + " rows, expected n = " + std::to_string(n));
    }
    const std::size_t m = a_.cols();
    if (m == 0) {
        throw Error(ErrorCode::DimensionMismatch, "quasimonomial count m must be at least 1");
    }
    if (b_.rows() != m || b_.cols() != n) {
        throw Error(ErrorCode::DimensionMismatch,
                    "B is " + std::to_string(b_.rows()) + "x" + std::to_string(b_.cols()) + ", expected " +
                        std::to_string(m) + "x" + std::to_string(n));
    }
    if (!relaxed_) {
        for (std::size_t j = 0; j < m; ++j) {
            if (a_.col_is_zero(j)) {
                throw Error(ErrorCode::ZeroColumnOfA, "column " + std::to_string(j) + " of A is zero",
                            static_cast<long long>(j));
            }
        }
        for (std::size_t j = 0; j < m; ++j) {
            if (b_.row_is_zero(j)) {
                throw Error(ErrorCode::ZeroRowOfB, "row " + std::to_string(j) + " of B is zero",
                            static_cast<long long>(j));
            }
        }
    }
    lambda_d_ = to_double(lambda_);
    a_d_ = to_double(a_);
    b_d_ = to_double(b_);
}

QPMap QPMap::create(RationalVector lambda, RationalMatrix a, RationalMatrix b) {
    return QPMap(std::move(lambda), std::move(a), std::move(b), false);
}

QPMap QPMap::create_relaxed(RationalVector lambda, RationalMatrix a, RationalMatrix b) {
    return QPMap(std::move(lambda), std::move(a), std::move(b), true);
}

RationalMatrix QPMap::m_matrix() const {
    return RationalMatrix::column(lambda_).hcat(a_);
}

State::State(std::vector<double> x) : x_(std::move(x)) {
    for (std::size_t i = 0; i < x_.size(); ++i) {
        if (!(x_[i] > 0.0) || !std::isfinite(x_[i])) {
            throw Error(ErrorCode::NonPositiveState,
                        "state component " + std::to_string(i) + " is not a finite positive number",
                        static_cast<long long>(i));
        }
    }
}

std::ostream& operator<<(std::ostream& os, const State& x) {
    os << "(";
    for (std::size_t i = 0; i < x.size(); ++i) {
        os << (i == 0 ? "" : ", ") << x[i];
    }
    return os << ")";
}

IterationError::IterationError(const Error& cause, long long failing_time, Trajectory partial)
    : Error(cause.code(), "t=" + std::to_string(failing_time) + ": " + cause.what(), failing_time),
      failing_time_(failing_time),
      partial_(std::move(partial)) {}

namespace {

void check_dimension(const QPMap& map, const State& x) {
    if (x.size() != map.n()) {
        throw Error(ErrorCode::DimensionMismatch,
                    "state has " + std::to_string(x.size()) + " components, map expects " + std::to_string(map.n()));
    }
}

std::vector<double> quasimonomials_unchecked(const QPMap& map, std::span<const double> log_x) {
    const Matrix& b = map.b_d();
    std::vector<double> q(map.m());
    for (std::size_t j = 0; j < map.m(); ++j) {
        double s = 0.0;
        for (std::size_t k = 0; k < map.n(); ++k) {
            if (b(j, k) != 0.0) {
                s += b(j, k) * log_x[k];
            }
        }
        q[j] = std::exp(s);
        if (!std::isfinite(q[j])) {
            throw Error(ErrorCode::NumericOverflow, "quasimonomial " + std::to_string(j) + " overflows",
                        static_cast<long long>(j));
        }
    }
    return q;
}

std::vector<double> log_state(const State& x) {
    std::vector<double> out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        out[i] = std::log(x[i]);
    }
    return out;
}

std::vector<double> phi_from_q(const QPMap& map, std::span<const double> q) {
    const Matrix& a = map.a_d();
    std::vector<double> out(map.lambda_d().begin(), map.lambda_d().end());
    for (std::size_t i = 0; i < map.n(); ++i) {
        for (std::size_t j = 0; j < map.m(); ++j) {
            out[i] += a(i, j) * q[j];
        }
    }
    return out;
}

}  // namespace

std::vector<double> quasimonomials(const QPMap& map, const State& x) {
    check_dimension(map, x);
    return quasimonomials_unchecked(map, log_state(x));
}

std::vector<double> phi(const QPMap& map, const State& x) {
    return phi_from_q(map, quasimonomials(map, x));
}

State step(const QPMap& map, const State& x) {
    const std::vector<double> f = phi(map, x);
    std::vector<double> next(map.n());
    for (std::size_t i = 0; i < map.n(); ++i) {
        next[i] = x[i] * std::exp(f[i]);
        if (!std::isfinite(next[i]) || next[i] <= 0.0) {
            throw Error(ErrorCode::NumericOverflow,
                        "component " + std::to_string(i) + " leaves the floating-point range (phi = " +
                            std::to_string(f[i]) + ")",
                        static_cast<long long>(i));
        }
    }
    return State(std::move(next));
}

Trajectory iterate(const QPMap& map, const State& x0, std::size_t steps) {
    check_dimension(map, x0);
    Trajectory traj;
    traj.states.reserve(steps + 1);
    traj.states.push_back(x0);
    for (std::size_t t = 0; t < steps; ++t) {
        try {
            traj.states.push_back(step(map, traj.states.back()));
        } catch (const Error& e) {
            throw IterationError(e, static_cast<long long>(t + 1), std::move(traj));
        }
    }
    return traj;
}

Matrix jacobian(const QPMap& map, const State& x) {
    const std::vector<double> q = quasimonomials(map, x);
    const std::vector<double> f = phi_from_q(map, q);
    const Matrix& a = map.a_d();
    const Matrix& b = map.b_d();
    const std::size_t n = map.n();

    Matrix l(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        const double e = std::exp(f[i]);
        if (!std::isfinite(e)) {
            throw Error(ErrorCode::NumericOverflow, "exp(phi_" + std::to_string(i) + ") overflows",
                        static_cast<long long>(i));
        }
        for (std::size_t j = 0; j < n; ++j) {
            double d = 0.0;
            for (std::size_t p = 0; p < map.m(); ++p) {
                d += a(i, p) * b(p, j) * q[p];
            }
            d *= x[i] / x[j];
            l(i, j) = ((i == j ? 1.0 : 0.0) + d) * e;
        }
    }
    return l;
}

}  // namespace qpmap
