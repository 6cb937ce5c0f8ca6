#include "qpmap/solve.hpp"

#include "qpmap/symplectic.hpp"
#include "qpmap/transform.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace qpmap {

ClosedFormSolution solve_closed_form(const QPMap& map, const State& x0) {
    const SymplecticReport report = check_theorem1(map);
    if (!report.is_symplectic) {
        throw Error(ErrorCode::NotSymplectic, "map is not symplectic: " + report.reason);
    }
    if (x0.size() != map.n()) {
        throw Error(ErrorCode::DimensionMismatch, "initial state has " + std::to_string(x0.size()) +
                                                      " components, map expects " + std::to_string(map.n()));
    }
    const std::size_t s = *report.s;

    // Transformed system: y_i constant and y_{s+i}(t+1) = k_i y_{s+i}(t).
    const QMT c = solver_qmt(s);
    const QPMap transformed = apply_qmt_relaxed(map, c);
    const State y0 = pull_state(c, x0);

    const Matrix& b = transformed.b_d();
    const Matrix& a = transformed.a_d();
    std::vector<double> q(transformed.m());
    for (std::size_t j = 0; j < transformed.m(); ++j) {
        double e = 0.0;
        for (std::size_t k = 0; k < s; ++k) {
            if (b(j, k) != 0.0) {
                e += b(j, k) * std::log(y0[k]);
            }
        }
        q[j] = std::exp(e);
    }

    ClosedFormSolution sol;
    sol.s = s;
    sol.x0 = x0;
    sol.log_k.resize(s);
    sol.invariants.resize(s);
    for (std::size_t i = 0; i < s; ++i) {
        double lk = transformed.lambda_d()[s + i];
        for (std::size_t j = 0; j < transformed.m(); ++j) {
            lk += a(s + i, j) * q[j];
        }
        sol.log_k[i] = lk;
        sol.invariants[i] = x0[i] * x0[s + i];
    }

    const std::vector<double> direct = phi(map, x0);
    for (std::size_t i = 0; i < s; ++i) {
        const double scale = std::max(1.0, std::abs(direct[i]));
        if (!(std::abs(direct[i] - sol.log_k[i]) <= 1e-9 * scale)) {
            throw Error(ErrorCode::InternalError,
                        "multiplier " + std::to_string(i + 1) + " disagrees with phi(x0): " +
                            std::to_string(sol.log_k[i]) + " vs " + std::to_string(direct[i]));
        }
    }
    return sol;
}

std::vector<double> eval_solution_log(const ClosedFormSolution& sol, long long t) {
    const std::size_t s = sol.s;
    std::vector<double> out(2 * s);
    const double tt = static_cast<double>(t);
    for (std::size_t i = 0; i < s; ++i) {
        out[i] = std::log(sol.x0[i]) + tt * sol.log_k[i];
        out[s + i] = std::log(sol.x0[s + i]) - tt * sol.log_k[i];
    }
    return out;
}

State eval_solution(const ClosedFormSolution& sol, long long t) {
    if (t == 0) {
        return sol.x0;
    }
    std::vector<double> logs = eval_solution_log(sol, t);
    for (std::size_t i = 0; i < logs.size(); ++i) {
        const double v = std::exp(logs[i]);
        if (!std::isfinite(v) || v <= 0.0) {
            throw Error(ErrorCode::NumericOverflow,
                        "t=" + std::to_string(t) + ": component " + std::to_string(i) + " out of range (ln x = " +
                            std::to_string(logs[i]) + ")",
                        static_cast<long long>(i));
        }
        logs[i] = v;
    }
    return State(std::move(logs));
}

std::vector<PairAsymptotics> classify_asymptotics(const ClosedFormSolution& sol) {
    std::vector<PairAsymptotics> out;
    for (std::size_t i = 0; i < sol.s; ++i) {
        PairAsymptotics pa;
        pa.i = i + 1;
        const double lk = sol.log_k[i];
        if (std::abs(lk) <= kUnitMultiplierTolerance) {
            pa.kind = PairBehavior::constant;
        } else {
            pa.kind = PairBehavior::split;
            pa.direction = lk > 0 ? 1 : -1;
            pa.near_unity = std::abs(lk) < kNearUnityLogK;
        }
        out.push_back(pa);
    }
    return out;
}

double verify_solution(const QPMap& map, const ClosedFormSolution& sol, std::size_t steps) {
    const Trajectory traj = iterate(map, sol.x0, steps);
    double worst = 0.0;
    for (std::size_t t = 0; t < traj.states.size(); ++t) {
        const std::vector<double> closed = eval_solution_log(sol, static_cast<long long>(t));
        for (std::size_t i = 0; i < closed.size(); ++i) {
            worst = std::max(worst, std::abs(std::log(traj.states[t][i]) - closed[i]));
        }
    }
    return worst;
}

}  // namespace qpmap
