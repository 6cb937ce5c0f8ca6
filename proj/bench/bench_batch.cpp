// Serial reference vs OpenMP kernels. Run with OMP_NUM_THREADS to vary the
// thread count.

#include "qpmap/batch.hpp"
#include "qpmap/symplectic.hpp"

#include <benchmark/benchmark.h>

#include <random>

namespace {

using namespace qpmap;

QPMap example_map() {
    // s = 2, m = 5: two antisymmetric pairs with matching B patterns.
    RationalMatrix a{{0, 0, 0, 1, 1}, {1, 1, 1, 0, 0}, {0, 0, 0, -1, -1}, {-1, -1, -1, 0, 0}};
    RationalMatrix b{{0, 1, 0, 1}, {0, 1, 0, 1}, {0, 1, 0, 1}, {1, 0, 1, 0}, {1, 0, 1, 0}};
    return QPMap::create({1, 1, -1, -1}, a, b);
}

std::vector<QPMap> random_maps(std::size_t count) {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> entry(-2, 2);
    std::vector<QPMap> out;
    while (out.size() < count) {
        const std::size_t n = 4;
        const std::size_t m = 4;
        RationalVector lambda(n);
        RationalMatrix a(n, m);
        RationalMatrix b(m, n);
        for (auto& v : lambda) v = entry(rng);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < m; ++j) a(i, j) = entry(rng);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < n; ++j) b(i, j) = entry(rng);
        try {
            out.push_back(QPMap::create(lambda, a, b));
        } catch (const Error&) {
        }
    }
    return out;
}

void BM_ResidualSerial(benchmark::State& state) {
    const QPMap map = example_map();
    const auto states = sample_log_uniform_states(4, static_cast<std::size_t>(state.range(0)), 0.5, 2.0, 1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(residual_scan_serial(map, states));
    }
}

void BM_ResidualParallel(benchmark::State& state) {
    const QPMap map = example_map();
    const auto states = sample_log_uniform_states(4, static_cast<std::size_t>(state.range(0)), 0.5, 2.0, 1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(residual_scan(map, states));
    }
}

void BM_EvalSerial(benchmark::State& state) {
    const ClosedFormSolution sol = solve_closed_form(example_map(), State{1, 1, 1, 1});
    for (auto _ : state) {
        benchmark::DoNotOptimize(eval_solution_range_serial(sol, -state.range(0), state.range(0)));
    }
}

void BM_EvalParallel(benchmark::State& state) {
    const ClosedFormSolution sol = solve_closed_form(example_map(), State{1, 1, 1, 1});
    for (auto _ : state) {
        benchmark::DoNotOptimize(eval_solution_range(sol, -state.range(0), state.range(0)));
    }
}

void BM_AgreementSerial(benchmark::State& state) {
    const auto maps = random_maps(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(classifier_agreement_serial(maps));
    }
}

void BM_AgreementParallel(benchmark::State& state) {
    const auto maps = random_maps(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(classifier_agreement(maps));
    }
}

}  // namespace

BENCHMARK(BM_ResidualSerial)->Arg(1000)->Arg(10000);
BENCHMARK(BM_ResidualParallel)->Arg(1000)->Arg(10000);
BENCHMARK(BM_EvalSerial)->Arg(1000)->Arg(100000);
BENCHMARK(BM_EvalParallel)->Arg(1000)->Arg(100000);
BENCHMARK(BM_AgreementSerial)->Arg(1000);
BENCHMARK(BM_AgreementParallel)->Arg(1000);

BENCHMARK_MAIN();
