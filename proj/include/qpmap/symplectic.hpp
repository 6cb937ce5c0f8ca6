#ifndef QPMAP_SYMPLECTIC_HPP
#define QPMAP_SYMPLECTIC_HPP

#include "qpmap/map.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace qpmap {

enum class Verdict { holds, violated, not_applicable };

/// One violated equality. Indices are 1-based, in the order named by `text`.
struct Witness {
    std::vector<std::size_t> indices;
    std::vector<Rational> values;
    std::string text;
};

struct ConditionReport {
    Verdict verdict = Verdict::not_applicable;
    std::vector<Witness> witnesses;

    bool holds() const { return verdict == Verdict::holds; }
};

enum class Classifier { theorem_conditions, zero_pattern };

/// Result of an exact symplecticity decision.
///
/// For `Classifier::theorem_conditions` the four slots are the antisymmetry of
/// A's paired rows (a), of lambda (b), the cross-pair products (c) and the
/// diagonal products (d).
///
/// For `Classifier::zero_pattern` the same slots hold the matching pattern
/// checks: (a) column p of A is supported on {i_p, s+i_p} with zero sum,
/// (b) lambda antisymmetry, (c) row p of B is supported exactly on
/// {i_p, s+i_p}, (d) B_{p,i_p} = B_{p,s+i_p}.
struct SymplecticReport {
    Classifier classifier = Classifier::theorem_conditions;
    bool is_symplectic = false;
    std::optional<std::size_t> s;
    ConditionReport cond_a;
    ConditionReport cond_b;
    ConditionReport cond_c;
    ConditionReport cond_d;
    /// When symplectic: pairing[p] = i_p in 1..s for every quasimonomial p.
    std::vector<std::size_t> pairing;
    std::string reason;  // non-empty when not symplectic
};

/// Exact check of the four coupled conditions on (lambda, A, B). Odd n gives
/// a definite negative with every condition not applicable.
SymplecticReport check_theorem1(const QPMap& map);

/// Independent classifier built on the zero-pattern characterization. Throws
/// OddDimension for odd n.
SymplecticReport check_pattern(const QPMap& map);

/// The 2s x 2s matrix [[0, -I], [I, 0]].
Matrix symplectic_form(std::size_t s);

/// max |L^T S L - S| with L the analytic Jacobian at x.
double numeric_symplectic_residual(const QPMap& map, const State& x);

/// Q_ij = sum_k (L_{s+k,s+i} L_{k,j} - L_{k,s+i} L_{s+k,j}); equals the
/// identity exactly where the Jacobian is symplectic.
Matrix q_matrix(const QPMap& map, const State& x);

/// det of the analytic Jacobian at x.
double jacobian_determinant(const QPMap& map, const State& x);

struct RankReport {
    std::size_t rank_b = 0;
    std::size_t rank_a = 0;
    std::size_t rank_m = 0;
    std::optional<std::size_t> s;
    /// rank_b <= s and rank_m <= s; false for odd n.
    bool bound_satisfied = false;
};

RankReport rank_bounds(const QPMap& map);

/// I_i = x_i * x_{s+i}, conserved along orbits of a symplectic map.
struct ConservedProduct {
    std::size_t i = 1;  // 1-based pair index
    std::size_t s = 1;

    double value_at(const State& x) const { return x[i - 1] * x[s + i - 1]; }
};

/// Throws NotSymplectic unless check_theorem1 accepts the map.
std::vector<ConservedProduct> conserved_products(const QPMap& map);

/// Multi-line human-readable rendering of the per-condition verdicts.
std::string describe(const SymplecticReport& report);

}  // namespace qpmap

#endif  // QPMAP_SYMPLECTIC_HPP
