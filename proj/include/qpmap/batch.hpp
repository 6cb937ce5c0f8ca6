#ifndef QPMAP_BATCH_HPP
#define QPMAP_BATCH_HPP

// Data-parallel kernels over independent samples. Every kernel has a
// `_serial` twin computing the same per-element values in the same order of
// operations; the parallel versions must agree with them bitwise.

#include "qpmap/map.hpp"
#include "qpmap/solve.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace qpmap {

/// States with each component drawn log-uniformly in [lo, hi].
std::vector<State> sample_log_uniform_states(std::size_t n, std::size_t count, double lo, double hi,
                                             std::uint64_t seed);

struct ResidualSample {
    double residual = 0.0;   // max |L^T S L - S|
    double det_error = 0.0;  // |det L - 1|
    bool overflow = false;   // Jacobian not representable; both fields are +inf
};

std::vector<ResidualSample> residual_scan(const QPMap& map, std::span<const State> states);
std::vector<ResidualSample> residual_scan_serial(const QPMap& map, std::span<const State> states);

struct ResidualSummary {
    double max_residual = 0.0;
    double max_det_error = 0.0;
    std::size_t overflow_count = 0;
};

ResidualSummary summarize(std::span<const ResidualSample> samples);

/// Row k holds ln x(t_min + k). Empty when t_max < t_min.
std::vector<std::vector<double>> eval_solution_range(const ClosedFormSolution& sol, long long t_min,
                                                     long long t_max);
std::vector<std::vector<double>> eval_solution_range_serial(const ClosedFormSolution& sol, long long t_min,
                                                            long long t_max);

/// 1 where check_theorem1 and check_pattern agree on is_symplectic, else 0.
std::vector<std::uint8_t> classifier_agreement(std::span<const QPMap> maps);
std::vector<std::uint8_t> classifier_agreement_serial(std::span<const QPMap> maps);

}  // namespace qpmap

#endif  // QPMAP_BATCH_HPP
