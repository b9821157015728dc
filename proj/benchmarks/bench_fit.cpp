#include <benchmark/benchmark.h>

#include "fracsurv/estimation.hpp"
#include "fracsurv/nonparam.hpp"
#include "fracsurv/simulate.hpp"

using namespace fracsurv;

namespace {
const ModelParams kTruncExp{1.0, 1.0, 1.0, 2.0};

std::vector<CensoredObservation> cohort(int n) {
    CohortSpec spec;
    spec.params = kTruncExp;
    spec.n = n;
    spec.censoring = CensoringKind::administrative;
    spec.cutoff = 1.1767850094423089;
    spec.seed = 12345;
    return make_cohort(spec);
}
} // namespace

static void BM_LogLikelihood(benchmark::State& state) {
    auto data = cohort((int)state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(log_likelihood(kTruncExp, data));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_LogLikelihood)->Arg(100)->Arg(1000)->Arg(10000);

static void BM_Fit(benchmark::State& state) {
    auto data = cohort((int)state.range(0));
    FitConfig cfg;
    cfg.n_restarts = 0;
    for (auto _ : state)
        benchmark::DoNotOptimize(fit(data, cfg));
}
BENCHMARK(BM_Fit)->Arg(200)->Arg(2000)->Unit(benchmark::kMillisecond);

static void BM_Sample(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(sample(kTruncExp, (int)state.range(0), 7));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Sample)->Arg(1000)->Arg(100000);

static void BM_NelsonAalen(benchmark::State& state) {
    auto data = cohort((int)state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(nelson_aalen(data));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_NelsonAalen)->Arg(1000)->Arg(100000);

BENCHMARK_MAIN();
