#include <benchmark/benchmark.h>

#include "fracsurv/model.hpp"

using namespace fracsurv;

namespace {
const ModelParams kShape1{3.0, 3.0, 1.5, 20.0};
const ModelParams kCase2{34.025, 34.094, 1.483, 94.512};
} // namespace

static void BM_Cdf(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(cdf(kShape1, 7.0));
}
BENCHMARK(BM_Cdf);

static void BM_CdfLargeScale(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(cdf(kCase2, 47.0));
}
BENCHMARK(BM_CdfLargeScale);

static void BM_Pdf(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(pdf(kCase2, 47.0));
}
BENCHMARK(BM_Pdf);

static void BM_Hazard(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(hazard(kCase2, 47.0));
}
BENCHMARK(BM_Hazard);

static void BM_Quantile(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(quantile(kShape1, 0.5));
}
BENCHMARK(BM_Quantile);

static void BM_Classify(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(classify_hazard_shape(kCase2, 257));
}
BENCHMARK(BM_Classify);

static void BM_CurveTable512(benchmark::State& state) {
    std::vector<double> times(512);
    for (int i = 0; i < 512; ++i)
        times[i] = kShape1.t_max * (i + 1) / 513.0;
    for (auto _ : state)
        benchmark::DoNotOptimize(curve_table(kShape1, times));
}
BENCHMARK(BM_CurveTable512);

BENCHMARK_MAIN();
