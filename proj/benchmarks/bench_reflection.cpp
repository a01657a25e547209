#include <benchmark/benchmark.h>

#include "levyreflect/barriers.hpp"
#include "levyreflect/levy_models.hpp"
#include "levyreflect/reflection.hpp"
#include "levyreflect/rng.hpp"

using namespace levyreflect;

static void BM_ReflectEventPath(benchmark::State& state) {
  const auto model = LevyModel::compound_poisson(3, JumpDistribution::exponential(1), -1);
  Rng rng(5);
  const auto path = sample_events(model, static_cast<double>(state.range(0)), rng);
  const auto f = Barrier::power(1.5, 0.1);
  for (auto _ : state) benchmark::DoNotOptimize(reflect_deterministic(path, f));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(path.jump_count()));
}
BENCHMARK(BM_ReflectEventPath)->Arg(1000)->Arg(10000);

static void BM_ReflectFloorSquarePositiveDrift(benchmark::State& state) {
  const auto model = LevyModel::compound_poisson(1, JumpDistribution::unit(), 0.5);
  Rng rng(6);
  const auto path = sample_events(model, 1000.0, rng);
  const auto f = Barrier::floor_square();
  for (auto _ : state) benchmark::DoNotOptimize(reflect_deterministic(path, f));
}
BENCHMARK(BM_ReflectFloorSquarePositiveDrift);

static void BM_ReflectLevyGrid(benchmark::State& state) {
  Rng rx(7, 0, 0);
  Rng ry(7, 0, 1);
  const auto x = sample_grid(LevyModel::brownian(1, 1), 0.01, 100.0, rx);
  const auto y = sample_grid(LevyModel::brownian(2, 1), 0.01, 100.0, ry);
  for (auto _ : state) benchmark::DoNotOptimize(reflect_levy(x, y));
}
BENCHMARK(BM_ReflectLevyGrid);

static void BM_FirstPassage(benchmark::State& state) {
  const auto model = LevyModel::compound_poisson(3, JumpDistribution::exponential(1), -1);
  Rng rng(8);
  const auto v = reflect_deterministic(sample_events(model, 2000.0, rng), Barrier::zero());
  for (auto _ : state) benchmark::DoNotOptimize(first_passage(v, 400.0));
}
BENCHMARK(BM_FirstPassage);

BENCHMARK_MAIN();
