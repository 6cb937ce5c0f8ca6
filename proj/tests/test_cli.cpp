#include "qpmap/cli.hpp"
#include "qpmap/document.hpp"
#include "qpmap/symplectic.hpp"

#include "support/fixtures.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace qpmap;
using namespace qpmap::testkit;

namespace {

namespace fs = std::filesystem;

struct Invocation {
    int code;
    std::string out;
    std::string err;
};

Invocation run(std::vector<std::string> args) {
    args.insert(args.begin(), "qpmap");
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string temp_path(const std::string& name) {
    const fs::path dir = fs::path(QPMAP_TEST_TMPDIR) / "cli_files";
    fs::create_directories(dir);
    return (dir / name).string();
}

std::string write_file(const std::string& name, const std::string& text) {
    const std::string path = temp_path(name);
    std::ofstream(path, std::ios::binary) << text;
    return path;
}

std::string write_map(const std::string& name, const QPMap& map) {
    return write_file(name, write_map_document(map));
}

std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }

std::vector<std::vector<double>> parse_csv(const std::string& text, std::string* header = nullptr) {
    std::istringstream in(text);
    std::string line;
    std::getline(in, line);
    if (header != nullptr) {
        *header = line;
    }
    std::vector<std::vector<double>> rows;
    while (std::getline(in, line)) {
        std::vector<double> row;
        std::istringstream fields(line);
        std::string f;
        while (std::getline(fields, f, ',')) {
            row.push_back(std::stod(f));
        }
        rows.push_back(row);
    }
    return rows;
}

}  // namespace

TEST(cli_check, single_pair_is_symplectic) {
    const Invocation r = run({"check", write_map("single_pair.qpmap.json", map_single_pair())});
    EXPECT_EQ(r.code, cli::kOk);
    EXPECT_EQ(first_line(r.out), "SYMPLECTIC (s=1); pairing p1→i=1; B·M = 0");
    EXPECT_NE(r.out.find("conserved products: I1 = x1·x2"), std::string::npos);
}

TEST(cli_check, broken_variant_reports_witness) {
    const Invocation r = run({"check", write_map("broken.qpmap.json", map_unequal_exponents())});
    EXPECT_EQ(r.code, cli::kNegative);
    EXPECT_NE(r.out.find("cond (d): i=1,p=1: 2·(1-2) = -2 ≠ 0"), std::string::npos) << r.out;
    EXPECT_EQ(first_line(r.out).rfind("NOT SYMPLECTIC (s=1); ", 0), 0u);
}

TEST(cli_check, input_errors_exit_2) {
    const std::string bad = write_file(
        "bad.qpmap.json", R"({"n": 2, "m": 1, "lambda": ["1", "-1"], "A": [["2"], ["-2"]], "B": [["1", "1/0"]]})");
    Invocation r = run({"check", bad});
    EXPECT_EQ(r.code, cli::kInputError);
    EXPECT_NE(r.err.find("B[0][1]: zero denominator"), std::string::npos) << r.err;

    r = run({"check", temp_path("does-not-exist.json")});
    EXPECT_EQ(r.code, cli::kInputError);
    EXPECT_NE(r.err.find("cannot open file"), std::string::npos);

    EXPECT_EQ(run({"frobnicate"}).code, cli::kInputError);
    EXPECT_EQ(run({}).code, cli::kInputError);
}

TEST(cli_check, odd_dimension_is_not_symplectic) {
    const Invocation r = run({"check", write_map("odd.qpmap.json", QPMap::create({1}, {{1}}, {{1}}))});
    EXPECT_EQ(r.code, cli::kNegative);
    EXPECT_EQ(first_line(r.out).rfind("NOT SYMPLECTIC (odd dimension", 0), 0u);
}

TEST(cli_solve, single_pair_rows_grow_like_exp_3t) {
    const std::string csv = temp_path("solve.csv");
    const Invocation r = run({"solve", write_map("single_pair.qpmap.json", map_single_pair()), "--x0", "1,1", "--t-max", "5", "--out", csv});
    ASSERT_EQ(r.code, cli::kOk) << r.err;
    EXPECT_NE(r.out.find("log_k = (3)"), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("pair 1 (x1, x2): split (x1 diverges, x2 → 0)"), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("verification over 5 steps"), std::string::npos);

    std::string header;
    const auto rows = parse_csv(read_text_file(csv), &header);
    EXPECT_EQ(header, "t,x1,x2");
    ASSERT_EQ(rows.size(), 6u);
    for (std::size_t t = 0; t < rows.size(); ++t) {
        EXPECT_EQ(rows[t][0], static_cast<double>(t));
        EXPECT_NEAR(rows[t][1] / std::exp(3.0 * static_cast<double>(t)), 1.0, 1e-12);
        EXPECT_NEAR(rows[t][1] * rows[t][2], 1.0, 1e-12);
    }
}

TEST(cli_solve, backward_rows_and_stdout) {
    const Invocation r = run({"solve", write_map("single_pair.qpmap.json", map_single_pair()), "--x0", "1,1", "--t-min", "-5", "--t-max", "0"});
    ASSERT_EQ(r.code, cli::kOk) << r.err;
    const auto rows = parse_csv(r.out);
    ASSERT_EQ(rows.size(), 6u);
    EXPECT_EQ(rows.front()[0], -5.0);
    EXPECT_NEAR(rows.front()[1] / std::exp(-15.0), 1.0, 1e-12);
    // With data on stdout the report moves to stderr.
    EXPECT_NE(r.err.find("log_k = (3)"), std::string::npos);
}

TEST(cli_solve, overflowing_rows_are_omitted_with_warning) {
    const Invocation r = run({"solve", write_map("single_pair.qpmap.json", map_single_pair()), "--x0", "1,1", "--t-min", "230", "--t-max", "240"});
    ASSERT_EQ(r.code, cli::kOk);
    EXPECT_NE(r.err.find("row(s) outside the floating-point range were omitted"), std::string::npos) << r.err;
    const auto rows = parse_csv(r.out);
    EXPECT_FALSE(rows.empty());
    EXPECT_LT(rows.size(), 11u);
}

TEST(cli_solve, non_symplectic_input_writes_no_csv) {
    const std::string csv = temp_path("never.csv");
    fs::remove(csv);
    const Invocation r = run(
        {"solve", write_map("broken.qpmap.json", map_unequal_exponents()), "--x0", "1,1", "--t-max", "5", "--out", csv});
    EXPECT_EQ(r.code, cli::kNegative);
    EXPECT_NE(r.err.find("cond (d)"), std::string::npos);
    EXPECT_FALSE(fs::exists(csv));
}

TEST(cli_solve, bad_state_is_an_input_error) {
    const std::string map = write_map("single_pair.qpmap.json", map_single_pair());
    EXPECT_EQ(run({"solve", map, "--x0", "1,-1", "--t-max", "5"}).code, cli::kInputError);
    EXPECT_EQ(run({"solve", map, "--x0", "1,abc", "--t-max", "5"}).code, cli::kInputError);
    EXPECT_EQ(run({"solve", map, "--x0", "1", "--t-max", "5"}).code, cli::kInputError);
}

TEST(cli_iterate, matches_solve_and_handles_edge_cases) {
    const std::string map = write_map("single_pair.qpmap.json", map_single_pair());
    const Invocation it = run({"iterate", map, "--x0", "1,1", "--steps", "3"});
    const Invocation so = run({"solve", map, "--x0", "1,1", "--t-max", "3"});
    ASSERT_EQ(it.code, cli::kOk);
    const auto a = parse_csv(it.out);
    const auto b = parse_csv(so.out);
    ASSERT_EQ(a.size(), 4u);
    ASSERT_EQ(b.size(), 4u);
    for (std::size_t t = 0; t < a.size(); ++t) {
        for (std::size_t i = 1; i < 3; ++i) {
            EXPECT_NEAR(a[t][i] / b[t][i], 1.0, 1e-9);
        }
    }

    EXPECT_EQ(parse_csv(run({"iterate", map, "--x0", "1,1", "--steps", "0"}).out).size(), 1u);

    // The trivial Lotka-Volterra map has A = 0, so it only exists as a relaxed document.
    const std::string trivial = write_file(
        "trivial.qpmap.json",
        R"({"n": 2, "m": 2, "lambda": ["0", "0"], "A": [["0", "0"], ["0", "0"]], "B": [["1", "0"], ["0", "1"]], "relaxed": true})");
    const auto rows = parse_csv(run({"iterate", trivial, "--x0", "2,1/3", "--steps", "5"}).out);
    ASSERT_EQ(rows.size(), 6u);
    for (const auto& row : rows) {
        EXPECT_EQ(row[1], 2.0);
        EXPECT_EQ(row[2], 1.0 / 3.0);
    }
}

TEST(cli_iterate, overflow_truncates) {
    const Invocation r = run({"iterate", write_map("single_pair.qpmap.json", map_single_pair()), "--x0", "1,1", "--steps", "300"});
    EXPECT_EQ(r.code, cli::kOk);
    EXPECT_NE(r.err.find("last valid t=236"), std::string::npos) << r.err;
    EXPECT_EQ(parse_csv(r.out).size(), 237u);
}

TEST(cli_transform, diag_qmt_breaks_symplecticity) {
    const std::string qmt = write_file("diag12.qmt.json", R"({"C": [["1", "0"], ["0", "2"]]})");
    const std::string out = temp_path("diag12.qpmap.json");
    const Invocation r = run({"transform", write_map("single_pair.qpmap.json", map_single_pair()), "--qmt", qmt, "--out", out});
    ASSERT_EQ(r.code, cli::kOk) << r.err;
    EXPECT_NE(r.out.find("symplectic: false (input: true; lost)"), std::string::npos) << r.out;
    EXPECT_EQ(parse_map_document(read_text_file(out)), map_diag12_image());
}

TEST(cli_transform, scale_and_solver_modes) {
    const std::string map = write_map("single_pair.qpmap.json", map_single_pair());
    Invocation r = run({"transform", map, "--scale", "3"});
    ASSERT_EQ(r.code, cli::kOk);
    EXPECT_NE(r.err.find("symplectic: true (input: true; preserved)"), std::string::npos);
    const QPMap scaled3 = parse_map_document(r.out);
    EXPECT_EQ(scaled3.b(), (RationalMatrix{{3, 3}}));

    r = run({"transform", map, "--solver-c"});
    ASSERT_EQ(r.code, cli::kOk);
    const QPMap solved = parse_map_document(r.out);
    // First row of (lambda'|A') is zero: x1 becomes a conserved quantity.
    EXPECT_TRUE(solved.m_matrix().row_is_zero(0));
    EXPECT_EQ(solved.b(), (RationalMatrix{{1, 0}}));

    EXPECT_EQ(run({"transform", map}).code, cli::kInputError);
    EXPECT_EQ(run({"transform", map, "--scale", "2", "--solver-c"}).code, cli::kInputError);
    EXPECT_EQ(run({"transform", map, "--scale", "0"}).code, cli::kInputError);
    const std::string odd = write_map("odd.qpmap.json", QPMap::create({1}, {{1}}, {{1}}));
    EXPECT_EQ(run({"transform", odd, "--solver-c"}).code, cli::kInputError);
    const std::string wrong = write_file("wrong.qmt.json", R"({"C": [["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]]})");
    EXPECT_EQ(run({"transform", map, "--qmt", wrong}).code, cli::kInputError);
}

TEST(cli_canonical, symplectic_maps_are_trivial) {
    Invocation r = run({"canonical", write_map("single_pair.qpmap.json", map_single_pair())});
    EXPECT_EQ(r.code, cli::kOk);
    EXPECT_EQ(first_line(r.out), "B·M = 0; canonical representative is trivial (identity map)");

    r = run({"canonical", write_map("two_pairs.qpmap.json", map_two_pairs(1, 2))});
    EXPECT_EQ(first_line(r.out), "B·M = 0; canonical representative is trivial (identity map)");
}

TEST(cli_canonical, generic_map_writes_lv_document) {
    const QPMap map = QPMap::create({1, 2}, {{1, 0}, {0, 1}}, {{1, 1}, {2, -1}});
    const std::string out = temp_path("lv.qpmap.json");
    const Invocation r = run({"canonical", write_map("generic.qpmap.json", map), "--out", out});
    ASSERT_EQ(r.code, cli::kOk) << r.err;
    const QPMap lv = parse_map_document(read_text_file(out));
    EXPECT_EQ(lv.b(), RationalMatrix::identity(2));
    EXPECT_EQ(lv.a(), map.b() * map.a());
    EXPECT_EQ(lv.lambda(), (std::vector<Rational>{3, 0}));
}

TEST(cli_verify, single_pair_passes_and_diag12_fails) {
    Invocation r = run({"verify", write_map("single_pair.qpmap.json", map_single_pair())});
    EXPECT_EQ(r.code, cli::kOk) << r.out;
    EXPECT_NE(r.out.find("samples = 100, seed = 42"), std::string::npos);
    EXPECT_NE(r.out.find("PASS"), std::string::npos);

    r = run({"verify", write_map("diag12.qpmap.json", map_diag12_image())});
    EXPECT_EQ(r.code, cli::kNegative);
    EXPECT_NE(r.out.find("max residual"), std::string::npos);
    EXPECT_NE(r.out.find("FAIL"), std::string::npos);
}

TEST(cli_verify, vacuous_and_odd) {
    Invocation r = run({"verify", write_map("diag12.qpmap.json", map_diag12_image()), "--samples", "0"});
    EXPECT_EQ(r.code, cli::kOk);
    EXPECT_NE(r.err.find("vacuous"), std::string::npos);

    r = run({"verify", write_map("odd.qpmap.json", QPMap::create({1}, {{1}}, {{1}}))});
    EXPECT_EQ(r.code, cli::kInputError);
    EXPECT_NE(r.err.find("OddDimension"), std::string::npos) << r.err;
}

TEST(cli_output, format_double_uses_17_digits) {
    EXPECT_EQ(cli::format_double(0.1), "0.10000000000000001");
    EXPECT_EQ(cli::format_double(1.0), "1");
}
