#include "qpmap/cli.hpp"

#include "qpmap/batch.hpp"
#include "qpmap/document.hpp"
#include "qpmap/solve.hpp"
#include "qpmap/symplectic.hpp"
#include "qpmap/transform.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>

namespace qpmap::cli {

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

/// Data destination: the --out file when set, else the report stream. The
/// human-readable report moves to stderr when data occupies stdout.
class Output {
public:
    Output(const std::string& path, std::ostream& out, std::ostream& err) : out_(out), err_(err) {
        if (!path.empty()) {
            file_ = std::make_unique<std::ofstream>(path, std::ios::binary | std::ios::trunc);
            if (!*file_) {
                throw Error(ErrorCode::ParseError, path + ": cannot open for writing");
            }
        }
    }

    std::ostream& data() { return file_ ? static_cast<std::ostream&>(*file_) : out_; }
    std::ostream& report() { return file_ ? out_ : err_; }

private:
    std::ostream& out_;
    std::ostream& err_;
    std::unique_ptr<std::ofstream> file_;
};

State parse_state(const std::string& text) {
    std::vector<double> values;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.find('/') != std::string::npos) {
            values.push_back(parse_rational(item).get_d());
            continue;
        }
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(item, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != item.size()) {
            throw Error(ErrorCode::ParseError, "--x0: malformed value '" + item + "'");
        }
        values.push_back(v);
    }
    return State(std::move(values));
}

QPMap load_map(const std::string& path) { return parse_map_document(read_text_file(path)); }

std::string matrix_text(const RationalMatrix& m) {
    std::string out = "[";
    for (std::size_t r = 0; r < m.rows(); ++r) {
        out += r == 0 ? "[" : ", [";
        for (std::size_t c = 0; c < m.cols(); ++c) {
            out += (c == 0 ? "" : ", ") + to_string(m(r, c));
        }
        out += "]";
    }
    return out + "]";
}

std::string vector_text(std::span<const double> v) {
    std::string out = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        out += (i == 0 ? "" : ", ") + format_double(v[i]);
    }
    return out + ")";
}

void write_csv_header(std::ostream& os, std::size_t n) {
    os << "t";
    for (std::size_t i = 1; i <= n; ++i) {
        os << ",x" << i;
    }
    os << "\n";
}

void write_csv_row(std::ostream& os, long long t, std::span<const double> x) {
    os << t;
    for (double v : x) {
        os << "," << format_double(v);
    }
    os << "\n";
}

std::string pairing_text(const std::vector<std::size_t>& pairing) {
    std::string out;
    for (std::size_t p = 0; p < pairing.size(); ++p) {
        out += (p == 0 ? "" : ", ") + std::string("p") + std::to_string(p + 1) + "→i=" + std::to_string(pairing[p]);
    }
    return out;
}

// ---- check ---------------------------------------------------------------

int cmd_check(const std::string& map_file, std::ostream& out, std::ostream& err) {
    const QPMap map = load_map(map_file);
    const SymplecticReport report = check_theorem1(map);
    if (map.n() % 2 == 0) {
        const SymplecticReport pattern = check_pattern(map);
        if (pattern.is_symplectic != report.is_symplectic || pattern.pairing != report.pairing) {
            err << "internal error: classifiers disagree (conditions: " << report.is_symplectic
                << ", zero pattern: " << pattern.is_symplectic << ")\n";
            return kInternalError;
        }
    }
    const RationalMatrix invariant = class_invariant(map);
    const bool null_invariant = invariant.is_zero();
    if (report.is_symplectic && !null_invariant) {
        err << "internal error: symplectic map with nonzero B·M\n";
        return kInternalError;
    }

    if (report.is_symplectic) {
        out << "SYMPLECTIC (s=" << *report.s << "); pairing " << pairing_text(report.pairing) << "; B·M = 0\n";
    } else if (!report.s) {
        out << "NOT SYMPLECTIC (" << report.reason << ")\n";
    } else {
        out << "NOT SYMPLECTIC (s=" << *report.s << "); " << report.reason << "; B·M "
            << (null_invariant ? "= 0" : "≠ 0") << "\n";
    }
    out << describe(report);

    const RankReport ranks = rank_bounds(map);
    out << "rank(B) = " << ranks.rank_b << ", rank(A) = " << ranks.rank_a << ", rank(M) = " << ranks.rank_m;
    if (ranks.s) {
        out << "; bounds rank(B) <= s, rank(M) <= s " << (ranks.bound_satisfied ? "satisfied" : "not satisfied");
    }
    out << "\n";
    out << "B·M = " << matrix_text(invariant) << (null_invariant ? " (null)" : "") << "\n";
    if (report.is_symplectic) {
        out << "conserved products:";
        for (const ConservedProduct& c : conserved_products(map)) {
            out << " I" << c.i << " = x" << c.i << "·x" << c.s + c.i;
        }
        out << "\n";
    }
    return report.is_symplectic ? kOk : kNegative;
}

// ---- solve ---------------------------------------------------------------

int cmd_solve(const std::string& map_file, const std::string& x0_text, long long t_min, long long t_max,
              const std::string& out_path, std::ostream& out, std::ostream& err) {
    const QPMap map = load_map(map_file);
    const State x0 = parse_state(x0_text);
    const SymplecticReport report = check_theorem1(map);
    if (!report.is_symplectic) {
        err << "not symplectic: " << report.reason << "\n";
        return kNegative;
    }
    const ClosedFormSolution sol = solve_closed_form(map, x0);

    Output sink(out_path, out, err);
    std::ostream& rep = sink.report();
    std::vector<double> k(sol.s);
    std::transform(sol.log_k.begin(), sol.log_k.end(), k.begin(), [](double v) { return std::exp(v); });
    rep << "log_k = " << vector_text(sol.log_k) << "\n";
    rep << "k = " << vector_text(k) << "\n";
    rep << "I = " << vector_text(sol.invariants) << "\n";
    for (const PairAsymptotics& pa : classify_asymptotics(sol)) {
        rep << "pair " << pa.i << " (x" << pa.i << ", x" << sol.s + pa.i << "): ";
        if (pa.kind == PairBehavior::constant) {
            rep << "constant\n";
        } else {
            const std::size_t up = pa.direction > 0 ? pa.i : sol.s + pa.i;
            const std::size_t down = pa.direction > 0 ? sol.s + pa.i : pa.i;
            rep << "split (x" << up << " diverges, x" << down << " → 0)";
            if (pa.near_unity) {
                rep << " [warning: multiplier within " << kNearUnityLogK << " of 1 in log space]";
            }
            rep << "\n";
        }
    }

    const std::size_t verify_steps = static_cast<std::size_t>(std::clamp<long long>(t_max, 0, 30));
    try {
        rep << "verification over " << verify_steps << " steps: max log-space error = "
            << format_double(verify_solution(map, sol, verify_steps)) << "\n";
    } catch (const Error& e) {
        err << "warning: verification stopped: " << e.what() << "\n";
    }

    std::ostream& csv = sink.data();
    write_csv_header(csv, map.n());
    const auto rows = eval_solution_range(sol, t_min, t_max);
    std::optional<long long> first_skipped;
    std::size_t skipped = 0;
    for (std::size_t r = 0; r < rows.size(); ++r) {
        std::vector<double> x(rows[r].size());
        bool ok = true;
        for (std::size_t i = 0; i < x.size(); ++i) {
            x[i] = std::exp(rows[r][i]);
            ok = ok && std::isfinite(x[i]) && x[i] > 0.0;
        }
        const long long t = t_min + static_cast<long long>(r);
        if (!ok) {
            if (!first_skipped) {
                first_skipped = t;
            }
            ++skipped;
            continue;
        }
        write_csv_row(csv, t, x);
    }
    if (skipped > 0) {
        err << "warning: " << skipped << " row(s) outside the floating-point range were omitted (first at t="
            << *first_skipped << ")\n";
    }
    return kOk;
}

// ---- iterate -------------------------------------------------------------

int cmd_iterate(const std::string& map_file, const std::string& x0_text, std::size_t steps,
                const std::string& out_path, std::ostream& out, std::ostream& err) {
    const QPMap map = load_map(map_file);
    const State x0 = parse_state(x0_text);
    Trajectory traj;
    std::optional<std::string> failure;
    try {
        traj = iterate(map, x0, steps);
    } catch (const IterationError& e) {
        traj = e.partial();
        failure = e.what();
    }
    Output sink(out_path, out, err);
    std::ostream& csv = sink.data();
    write_csv_header(csv, map.n());
    for (std::size_t k = 0; k < traj.states.size(); ++k) {
        write_csv_row(csv, traj.t0 + static_cast<long long>(k), traj.states[k].values());
    }
    if (failure) {
        err << "warning: iteration truncated (" << *failure << "); last valid t="
            << traj.t0 + static_cast<long long>(traj.states.size()) - 1 << "\n";
    }
    return kOk;
}

// ---- transform -----------------------------------------------------------

int cmd_transform(const std::string& map_file, const std::string& qmt_file, const std::string& scale,
                  bool solver_c, const std::string& out_path, std::ostream& out, std::ostream& err) {
    const int modes = (qmt_file.empty() ? 0 : 1) + (scale.empty() ? 0 : 1) + (solver_c ? 1 : 0);
    if (modes != 1) {
        err << "transform: exactly one of --qmt, --scale, --solver-c is required\n";
        return kInputError;
    }
    const QPMap map = load_map(map_file);
    std::optional<QMT> qmt;
    if (!qmt_file.empty()) {
        qmt.emplace(parse_qmt_document(read_text_file(qmt_file)));
    } else if (!scale.empty()) {
        const Rational mu = parse_rational(scale);
        qmt.emplace(scaled(RationalMatrix::identity(map.n()), mu));
    } else {
        if (map.n() % 2 != 0) {
            throw Error(ErrorCode::OddDimension, "--solver-c needs even n, got " + std::to_string(map.n()));
        }
        qmt.emplace(solver_qmt(map.n() / 2));
    }

    std::optional<QPMap> result;
    bool degenerate = false;
    try {
        result.emplace(apply_qmt(map, *qmt));
    } catch (const DegenerateResultError& e) {
        result.emplace(e.raw());
        degenerate = true;
        err << "warning: " << e.what() << "; writing a relaxed document\n";
    }

    const bool before = check_theorem1(map).is_symplectic;
    const bool after = check_theorem1(*result).is_symplectic;
    Output sink(out_path, out, err);
    sink.data() << write_map_document(*result);
    sink.report() << "symplectic: " << (after ? "true" : "false") << " (input: " << (before ? "true" : "false")
                  << (before ? (after ? "; preserved" : "; lost") : "") << ")\n";
    if (degenerate) {
        sink.report() << "relaxed: true\n";
    }
    return kOk;
}

// ---- canonical -----------------------------------------------------------

int cmd_canonical(const std::string& map_file, const std::string& out_path, std::ostream& out, std::ostream& err) {
    const QPMap map = load_map(map_file);
    const RationalMatrix invariant = class_invariant(map);
    const bool symplectic = check_theorem1(map).is_symplectic;
    if (invariant.is_zero()) {
        out << "B·M = 0; canonical representative is trivial (identity map)\n";
        if (symplectic) {
            out << "note: the map is symplectic, and the only symplectic Lotka-Volterra maps are the trivial ones\n";
        }
        return kOk;
    }
    try {
        const QPMap lv = lv_canonical(map);
        Output sink(out_path, out, err);
        sink.report() << "B·M = " << matrix_text(invariant) << "\n";
        sink.report() << "canonical Lotka-Volterra representative: dimension " << lv.n() << "\n";
        sink.data() << write_map_document(lv);
    } catch (const DegenerateResultError& e) {
        Output sink(out_path, out, err);
        sink.report() << "B·M = " << matrix_text(invariant) << "\n";
        sink.report() << "canonical representative is degenerate: " << e.what() << "\n";
        sink.data() << write_map_document(e.raw());
    }
    return kOk;
}

// ---- verify --------------------------------------------------------------

int cmd_verify(const std::string& map_file, std::size_t samples, double tol, std::uint64_t seed, std::ostream& out,
               std::ostream& err) {
    const QPMap map = load_map(map_file);
    if (map.n() % 2 != 0) {
        throw Error(ErrorCode::OddDimension, "verify needs even n, got " + std::to_string(map.n()));
    }
    if (samples == 0) {
        err << "warning: no samples requested; vacuous pass\n";
        out << "samples = 0; PASS (vacuous)\n";
        return kOk;
    }
    const std::vector<State> states = sample_log_uniform_states(map.n(), samples, 0.5, 2.0, seed);
    const std::vector<ResidualSample> results = residual_scan(map, states);
    const ResidualSummary summary = summarize(results);
    const bool pass = summary.max_residual <= tol && summary.max_det_error <= tol;
    out << "samples = " << samples << ", seed = " << seed << ", tol = " << format_double(tol) << "\n";
    out << "max residual |L^T S L - S| = " << format_double(summary.max_residual) << "\n";
    out << "max |det L - 1| = " << format_double(summary.max_det_error) << "\n";
    if (summary.overflow_count > 0) {
        out << "overflowed samples = " << summary.overflow_count << "\n";
    }
    out << (pass ? "PASS" : "FAIL") << "\n";
    return pass ? kOk : kNegative;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Quasipolynomial map toolkit: classification, closed-form solutions, iteration, transformations"};
    app.require_subcommand(1);

    std::string map_file;
    std::string out_path;
    std::string x0;

    auto* check = app.add_subcommand("check", "Decide symplecticity exactly and print the structural report");
    check->add_option("map_file", map_file, "Map document (.qpmap.json)")->required();

    long long t_min = 0;
    long long t_max = 0;
    auto* solve = app.add_subcommand("solve", "Closed-form solution of a symplectic map as CSV");
    solve->add_option("map_file", map_file)->required();
    solve->add_option("--x0", x0, "Initial state, comma separated")->required();
    solve->add_option("--t-max", t_max, "Last time index")->required();
    solve->add_option("--t-min", t_min, "First time index (may be negative)");
    solve->add_option("--out", out_path, "CSV destination (default: stdout)");

    std::size_t steps = 0;
    auto* iter = app.add_subcommand("iterate", "Forward iteration as CSV");
    iter->add_option("map_file", map_file)->required();
    iter->add_option("--x0", x0, "Initial state, comma separated")->required();
    iter->add_option("--steps", steps, "Number of steps")->required();
    iter->add_option("--out", out_path, "CSV destination (default: stdout)");

    std::string qmt_file;
    std::string scale;
    bool solver_c = false;
    auto* transform = app.add_subcommand("transform", "Apply a quasimonomial transformation");
    transform->add_option("map_file", map_file)->required();
    transform->add_option("--qmt", qmt_file, "QMT document (.qmt.json)");
    transform->add_option("--scale", scale, "Use C = mu*I");
    transform->add_flag("--solver-c", solver_c, "Use the block matrix [[I, I], [0, -I]]");
    transform->add_option("--out", out_path, "Map document destination (default: stdout)");

    auto* canonical = app.add_subcommand("canonical", "Class invariant B·M and canonical Lotka-Volterra form");
    canonical->add_option("map_file", map_file)->required();
    canonical->add_option("--out", out_path, "Map document destination (default: stdout)");

    std::size_t samples = 100;
    double tol = 1e-9;
    std::uint64_t seed = 42;
    auto* verify = app.add_subcommand("verify", "Numerical symplecticity check on sampled states");
    verify->add_option("map_file", map_file)->required();
    verify->add_option("--samples", samples, "Number of sampled states")->capture_default_str();
    verify->add_option("--tol", tol, "Tolerance for residual and |det L - 1|")->capture_default_str();
    verify->add_option("--seed", seed, "PRNG seed")->capture_default_str();

    std::vector<std::string> reversed(args.size() > 1 ? args.begin() + 1 : args.end(), args.end());
    std::reverse(reversed.begin(), reversed.end());
    if (!args.empty()) {
        app.name(args.front());
    }
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kInputError;
    }

    try {
        if (*check) {
            return cmd_check(map_file, out, err);
        }
        if (*solve) {
            return cmd_solve(map_file, x0, t_min, t_max, out_path, out, err);
        }
        if (*iter) {
            return cmd_iterate(map_file, x0, steps, out_path, out, err);
        }
        if (*transform) {
            return cmd_transform(map_file, qmt_file, scale, solver_c, out_path, out, err);
        }
        if (*canonical) {
            return cmd_canonical(map_file, out_path, out, err);
        }
        if (*verify) {
            return cmd_verify(map_file, samples, tol, seed, out, err);
        }
    } catch (const Error& e) {
        err << "error [" << to_string(e.code()) << "]: " << e.what() << "\n";
        switch (e.code()) {
            case ErrorCode::NotSymplectic: return kNegative;
            case ErrorCode::InternalError: return kInternalError;
            default: return kInputError;
        }
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return kInternalError;
    }
    return kInputError;
}

}  // namespace qpmap::cli
