#include "qpmap/transform.hpp"

#include <cmath>
#include <string>

namespace qpmap {

QMT::QMT(RationalMatrix c) : c_(std::move(c)) {
    if (c_.rows() != c_.cols() || c_.rows() == 0) {
        throw Error(ErrorCode::DimensionMismatch, "QMT matrix must be square and non-empty");
    }
    std::optional<RationalMatrix> inv = inverse(c_);
    if (!inv) {
        throw Error(ErrorCode::SingularMatrix, "QMT matrix is singular");
    }
    c_inv_ = std::move(*inv);
}

QPMap apply_qmt_relaxed(const QPMap& map, const QMT& qmt) {
    if (qmt.n() != map.n()) {
        throw Error(ErrorCode::DimensionMismatch, "QMT is " + std::to_string(qmt.n()) + "x" +
                                                       std::to_string(qmt.n()) + ", map has n = " +
                                                       std::to_string(map.n()));
    }
    return QPMap::create_relaxed(qmt.c_inv() * std::span<const Rational>(map.lambda()), qmt.c_inv() * map.a(),
                                 map.b() * qmt.c());
}

QPMap apply_qmt(const QPMap& map, const QMT& qmt) {
    QPMap raw = apply_qmt_relaxed(map, qmt);
    for (std::size_t j = 0; j < raw.m(); ++j) {
        if (raw.a().col_is_zero(j)) {
            throw DegenerateResultError("transformed A has a zero column " + std::to_string(j), raw);
        }
        if (raw.b().row_is_zero(j)) {
            throw DegenerateResultError("transformed B has a zero row " + std::to_string(j), raw);
        }
    }
    return QPMap::create(raw.lambda(), raw.a(), raw.b());
}

namespace {

State power_product(const RationalMatrix& exponents, const State& base) {
    if (base.size() != exponents.cols()) {
        throw Error(ErrorCode::DimensionMismatch, "state dimension does not match the QMT");
    }
    const Matrix e = to_double(exponents);
    std::vector<double> logs(base.size());
    for (std::size_t k = 0; k < base.size(); ++k) {
        logs[k] = std::log(base[k]);
    }
    std::vector<double> out(e.rows());
    for (std::size_t i = 0; i < e.rows(); ++i) {
        // A unit exponent row is a plain copy; keeps identity transforms exact.
        std::size_t nonzero = 0;
        std::size_t last = 0;
        for (std::size_t k = 0; k < e.cols(); ++k) {
            if (e(i, k) != 0.0) {
                ++nonzero;
                last = k;
            }
        }
        if (nonzero == 1 && e(i, last) == 1.0) {
            out[i] = base[last];
            continue;
        }
        double s = 0.0;
        for (std::size_t k = 0; k < e.cols(); ++k) {
            if (e(i, k) != 0.0) {
                s += e(i, k) * logs[k];
            }
        }
        out[i] = std::exp(s);
        if (!std::isfinite(out[i]) || out[i] <= 0.0) {
            throw Error(ErrorCode::NumericOverflow, "transformed component " + std::to_string(i) + " out of range",
                        static_cast<long long>(i));
        }
    }
    return State(std::move(out));
}

}  // namespace

State push_state(const QMT& qmt, const State& y) { return power_product(qmt.c(), y); }

State pull_state(const QMT& qmt, const State& x) { return power_product(qmt.c_inv(), x); }

RationalMatrix class_invariant(const QPMap& map) { return map.b() * map.m_matrix(); }

QPMap lv_canonical(const QPMap& map) {
    RationalVector lambda_c = map.b() * std::span<const Rational>(map.lambda());
    RationalMatrix a_c = map.b() * map.a();
    QPMap raw = QPMap::create_relaxed(std::move(lambda_c), std::move(a_c), RationalMatrix::identity(map.m()));
    for (std::size_t j = 0; j < raw.m(); ++j) {
        if (raw.a().col_is_zero(j)) {
            throw DegenerateResultError("canonical interaction matrix B·A has a zero column " + std::to_string(j), raw);
        }
    }
    return QPMap::create(raw.lambda(), raw.a(), raw.b());
}

QMT solver_qmt(std::size_t s) {
    if (s == 0) {
        throw Error(ErrorCode::DimensionMismatch, "solver transformation needs s >= 1");
    }
    RationalMatrix c(2 * s, 2 * s);
    for (std::size_t i = 0; i < s; ++i) {
        c(i, i) = 1;
        c(i, s + i) = 1;
        c(s + i, s + i) = -1;
    }
    return QMT(std::move(c));
}

}  // namespace qpmap
