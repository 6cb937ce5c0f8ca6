#include "qpmap/batch.hpp"

#include "qpmap/symplectic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace qpmap {

std::vector<State> sample_log_uniform_states(std::size_t n, std::size_t count, double lo, double hi,
                                             std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(std::log(lo), std::log(hi));
    std::vector<State> out;
    out.reserve(count);
    for (std::size_t k = 0; k < count; ++k) {
        std::vector<double> x(n);
        for (double& v : x) {
            v = std::exp(dist(rng));
        }
        out.emplace_back(std::move(x));
    }
    return out;
}

namespace {

ResidualSample residual_at(const QPMap& map, const State& x) {
    ResidualSample r;
    try {
        const Matrix l = jacobian(map, x);
        const Matrix sm = symplectic_form(map.n() / 2);
        r.residual = max_abs(l.transposed() * sm * l - sm);
        r.det_error = std::abs(determinant(l) - 1.0);
    } catch (const Error& e) {
        if (e.code() != ErrorCode::NumericOverflow) {
            throw;
        }
        r.overflow = true;
        r.residual = std::numeric_limits<double>::infinity();
        r.det_error = std::numeric_limits<double>::infinity();
    }
    return r;
}

void require_even(const QPMap& map) {
    if (map.n() % 2 != 0) {
        throw Error(ErrorCode::OddDimension, "residual scan needs even n, got " + std::to_string(map.n()));
    }
}

std::vector<double> eval_row(const ClosedFormSolution& sol, long long t) { return eval_solution_log(sol, t); }

std::uint8_t agreement(const QPMap& map) {
    return check_theorem1(map).is_symplectic == check_pattern(map).is_symplectic ? 1 : 0;
}

}  // namespace

std::vector<ResidualSample> residual_scan(const QPMap& map, std::span<const State> states) {
    require_even(map);
    const auto count = static_cast<std::ptrdiff_t>(states.size());
    std::vector<ResidualSample> out(states.size());
    // Only NumericOverflow is caught per sample; dimension errors are checked
    // up front so nothing escapes the parallel region.
    for (const State& x : states) {
        if (x.size() != map.n()) {
            throw Error(ErrorCode::DimensionMismatch, "sample state dimension does not match the map");
        }
    }
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t k = 0; k < count; ++k) {
        out[k] = residual_at(map, states[k]);
    }
    return out;
}

std::vector<ResidualSample> residual_scan_serial(const QPMap& map, std::span<const State> states) {
    require_even(map);
    std::vector<ResidualSample> out;
    out.reserve(states.size());
    for (const State& x : states) {
        if (x.size() != map.n()) {
            throw Error(ErrorCode::DimensionMismatch, "sample state dimension does not match the map");
        }
        out.push_back(residual_at(map, x));
    }
    return out;
}

ResidualSummary summarize(std::span<const ResidualSample> samples) {
    ResidualSummary s;
    for (const ResidualSample& r : samples) {
        s.max_residual = std::max(s.max_residual, r.residual);
        s.max_det_error = std::max(s.max_det_error, r.det_error);
        s.overflow_count += r.overflow ? 1 : 0;
    }
    return s;
}

std::vector<std::vector<double>> eval_solution_range(const ClosedFormSolution& sol, long long t_min,
                                                     long long t_max) {
    if (t_max < t_min) {
        return {};
    }
    const auto count = static_cast<std::ptrdiff_t>(t_max - t_min + 1);
    std::vector<std::vector<double>> out(static_cast<std::size_t>(count));
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t k = 0; k < count; ++k) {
        out[k] = eval_row(sol, t_min + k);
    }
    return out;
}

std::vector<std::vector<double>> eval_solution_range_serial(const ClosedFormSolution& sol, long long t_min,
                                                            long long t_max) {
    std::vector<std::vector<double>> out;
    for (long long t = t_min; t <= t_max; ++t) {
        out.push_back(eval_row(sol, t));
    }
    return out;
}

std::vector<std::uint8_t> classifier_agreement(std::span<const QPMap> maps) {
    for (const QPMap& m : maps) {
        require_even(m);
    }
    const auto count = static_cast<std::ptrdiff_t>(maps.size());
    std::vector<std::uint8_t> out(maps.size());
#pragma omp parallel for schedule(dynamic, 64)
    for (std::ptrdiff_t k = 0; k < count; ++k) {
        out[k] = agreement(maps[k]);
    }
    return out;
}

std::vector<std::uint8_t> classifier_agreement_serial(std::span<const QPMap> maps) {
    std::vector<std::uint8_t> out;
    out.reserve(maps.size());
    for (const QPMap& m : maps) {
        require_even(m);
        out.push_back(agreement(m));
    }
    return out;
}

}  // namespace qpmap
