#include <benchmark/benchmark.h>

#include "levyreflect/asymptotics.hpp"
#include "levyreflect/barriers.hpp"
#include "levyreflect/levy_models.hpp"

using namespace levyreflect;

static void BM_ExactUnderlineLinear(benchmark::State& state) {
  const auto tail = TailSpec::exponential(1);
  const auto f = Barrier::linear(1);
  const double u = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(exact_underline_prob(1, tail, f, u, 0.5));
}
BENCHMARK(BM_ExactUnderlineLinear)->Arg(10)->Arg(100)->Arg(1000);

static void BM_LogExactUnderlineSquare(benchmark::State& state) {
  const auto tail = TailSpec::erlang(2, 1);
  const auto f = Barrier::power(2);
  for (auto _ : state) benchmark::DoNotOptimize(log_exact_underline_prob(1, tail, f, 2000, 0.5));
}
BENCHMARK(BM_LogExactUnderlineSquare);

static void BM_IjRatio(benchmark::State& state) {
  const auto tail = TailSpec::exponential(1);
  const auto f = Barrier::power(2);
  for (auto _ : state) benchmark::DoNotOptimize(ij_ratio(tail, f, 40, 0.5));
}
BENCHMARK(BM_IjRatio);

static void BM_LundbergRoot(benchmark::State& state) {
  const auto model = LevyModel::compound_poisson(0.5, JumpDistribution::gamma(3, 2), -1);
  for (auto _ : state) benchmark::DoNotOptimize(lundberg_root(model));
}
BENCHMARK(BM_LundbergRoot);

BENCHMARK_MAIN();
