#include <benchmark/benchmark.h>

#include "lexpcm/baselines.hpp"
#include "lexpcm/lex_completion.hpp"
#include "lexpcm/metrics.hpp"
#include "lexpcm/rng.hpp"
#include "lexpcm/simulation.hpp"

using namespace lexpcm;

namespace {

IncompletePcm random_instance(int n, int m, std::uint64_t seed) {
    SplitMix64 rng(seed);
    for (;;) {
        auto inc = random_saaty_incomplete(n, m, rng);
        if (is_connected(graph_of(inc))) return inc;
    }
}

void BM_LexComplete(benchmark::State& state) {
    auto inc = random_instance(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)), 7);
    for (auto _ : state) {
        auto result = lex_complete(inc);
        benchmark::DoNotOptimize(result.theta);
    }
}
BENCHMARK(BM_LexComplete)->Args({5, 1})->Args({5, 2})->Args({6, 6})->Args({10, 1});

void BM_CrOptimalComplete(benchmark::State& state) {
    auto inc = random_instance(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)), 7);
    for (auto _ : state) {
        auto result = cr_optimal_complete(inc);
        benchmark::DoNotOptimize(result.matrix);
    }
}
BENCHMARK(BM_CrOptimalComplete)->Args({5, 1})->Args({5, 2})->Args({6, 6})->Args({10, 1});

void BM_LambdaMax(benchmark::State& state) {
    SplitMix64 rng(11);
    auto m = random_saaty_incomplete(static_cast<int>(state.range(0)), 0, rng).to_complete();
    for (auto _ : state) benchmark::DoNotOptimize(lambda_max(m));
}
BENCHMARK(BM_LambdaMax)->Arg(5)->Arg(10);

void BM_ThetaVector(benchmark::State& state) {
    SplitMix64 rng(12);
    auto m = random_saaty_incomplete(static_cast<int>(state.range(0)), 0, rng).to_complete();
    for (auto _ : state) benchmark::DoNotOptimize(theta_vector(m));
}
BENCHMARK(BM_ThetaVector)->Arg(5)->Arg(10);

}  // namespace

BENCHMARK_MAIN();
