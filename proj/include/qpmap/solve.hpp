#ifndef QPMAP_SOLVE_HPP
#define QPMAP_SOLVE_HPP

#include "qpmap/map.hpp"

#include <cstddef>
#include <vector>

namespace qpmap {

/// Orbit of a symplectic QP map in closed form:
///
///     x_i(t)     = x_i(0)     * k_i^t
///     x_{s+i}(t) = x_{s+i}(0) * k_i^-t
///
/// Multipliers are stored as log k_i so evaluation stays in log space.
struct ClosedFormSolution {
    std::size_t s = 0;
    State x0;
    std::vector<double> log_k;
    std::vector<double> invariants;  // I_i = x_i(0) x_{s+i}(0)
};

/// |log k| at or below this is treated as k = 1.
inline constexpr double kUnitMultiplierTolerance = 1e-12;
/// Split pairs with |log k| below this are flagged as near-unity.
inline constexpr double kNearUnityLogK = 1e-8;

enum class PairBehavior { constant, split };

struct PairAsymptotics {
    std::size_t i = 1;  // 1-based pair index
    PairBehavior kind = PairBehavior::constant;
    bool near_unity = false;
    /// +1 when x_i diverges and x_{s+i} -> 0, -1 for the reverse, 0 if constant.
    int direction = 0;
};

/// Builds the closed form through the block transformation [[I, I], [0, -I]]:
/// y = pull(x0), then log k_i = lambda_i + sum_j A_ij prod_{q<=s} y_q^B_jq.
/// Cross-checked against phi_i(x0). Throws NotSymplectic.
ClosedFormSolution solve_closed_form(const QPMap& map, const State& x0);

/// ln x(t), valid for every integer t.
std::vector<double> eval_solution_log(const ClosedFormSolution& sol, long long t);

/// x(t); NumericOverflow when a component leaves the double range.
State eval_solution(const ClosedFormSolution& sol, long long t);

std::vector<PairAsymptotics> classify_asymptotics(const ClosedFormSolution& sol);

/// Iterates the map T steps from sol.x0 and returns
/// max_{t<=T, i} |ln x_iter_i(t) - ln x_closed_i(t)|.
double verify_solution(const QPMap& map, const ClosedFormSolution& sol, std::size_t steps);

}  // namespace qpmap

#endif  // QPMAP_SOLVE_HPP
