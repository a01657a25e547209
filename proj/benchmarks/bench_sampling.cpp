#include <benchmark/benchmark.h>

#include "levyreflect/levy_models.hpp"
#include "levyreflect/rng.hpp"

using namespace levyreflect;

static void BM_SampleEventsCompoundPoisson(benchmark::State& state) {
  const auto model = LevyModel::compound_poisson(3, JumpDistribution::exponential(1), -1);
  const double horizon = static_cast<double>(state.range(0));
  std::uint64_t i = 0;
  for (auto _ : state) {
    Rng rng(1, i++);
    benchmark::DoNotOptimize(sample_events(model, horizon, rng));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0) * 3);
}
BENCHMARK(BM_SampleEventsCompoundPoisson)->Arg(100)->Arg(1000)->Arg(10000);

static void BM_SampleGridBrownian(benchmark::State& state) {
  const auto model = LevyModel::brownian(1, 1);
  const double horizon = static_cast<double>(state.range(0));
  std::uint64_t i = 0;
  for (auto _ : state) {
    Rng rng(2, i++);
    benchmark::DoNotOptimize(sample_grid(model, 0.01, horizon, rng));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0) * 100);
}
BENCHMARK(BM_SampleGridBrownian)->Arg(10)->Arg(100);

static void BM_GammaJumps(benchmark::State& state) {
  const auto jump = JumpDistribution::gamma(static_cast<int>(state.range(0)), 1.0);
  Rng rng(3);
  for (auto _ : state) benchmark::DoNotOptimize(jump.sample(rng));
}
BENCHMARK(BM_GammaJumps)->Arg(1)->Arg(2)->Arg(8);

BENCHMARK_MAIN();
