#include <benchmark/benchmark.h>

#include <vector>

#include "levyreflect/montecarlo.hpp"
#include "levyreflect/rng.hpp"

using namespace levyreflect;

static void BM_TauExperiment(benchmark::State& state) {
  const ExperimentSpec spec{.model = LevyModel::compound_poisson(3, JumpDistribution::exponential(1), -1),
                            .barrier = Barrier::zero(),
                            .level = static_cast<double>(state.range(0)),
                            .replications = 1000,
                            .seed = 1};
  for (auto _ : state) benchmark::DoNotOptimize(run_tau_experiment(spec));
  state.SetItemsProcessed(state.iterations() * 1000);
}
BENCHMARK(BM_TauExperiment)->Arg(50)->Arg(400)->Unit(benchmark::kMillisecond);

static void BM_TiltedPassage(benchmark::State& state) {
  const ExperimentSpec spec{.model = LevyModel::compound_poisson(1, JumpDistribution::exponential(1), -1),
                            .barrier = Barrier::power(2),
                            .level = 60,
                            .replications = 10000,
                            .seed = 2};
  for (auto _ : state) benchmark::DoNotOptimize(estimate_passage_prob_tilted(spec, 0.7, 5.477));
  state.SetItemsProcessed(state.iterations() * 10000);
}
BENCHMARK(BM_TiltedPassage)->Unit(benchmark::kMillisecond);

static void BM_KsStatistic(benchmark::State& state) {
  std::vector<double> z(static_cast<std::size_t>(state.range(0)));
  Rng rng(3);
  for (auto& v : z) v = rng.normal();
  for (auto _ : state) benchmark::DoNotOptimize(ks_statistic(z));
}
BENCHMARK(BM_KsStatistic)->Arg(1000)->Arg(100000);

BENCHMARK_MAIN();
