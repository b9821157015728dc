#include <benchmark/benchmark.h>

#include "fracsurv/series.hpp"

using namespace fracsurv;

static void BM_Chf1f1Small(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(chf_1f1_stable(3.0, 4.0, -3.0));
}
BENCHMARK(BM_Chf1f1Small);

static void BM_Chf1f1LargeNegative(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(chf_1f1_stable(34.025, 35.094, -140.161296));
}
BENCHMARK(BM_Chf1f1LargeNegative);

static void BM_Chf1f1LargePositive(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(signed_ln_chf_1f1(1.069, 35.094, 140.161296));
}
BENCHMARK(BM_Chf1f1LargePositive);

static void BM_Chf1f1Terminating(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(chf_1f1_stable(-1.0, 2.0, -40.0));
}
BENCHMARK(BM_Chf1f1Terminating);

static void BM_LnGamma(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(ln_gamma(35.094));
}
BENCHMARK(BM_LnGamma);

BENCHMARK_MAIN();
