#include <benchmark/benchmark.h>

#include "rbound/bounds.hpp"

using namespace rbound;

namespace {

void BM_TierBounds(benchmark::State& state) {
  const DensityModel m = make_semicircle(1.0);
  const Tier t = static_cast<Tier>(state.range(0));
  const TierContext ctx{Scheme::ToNearest, 0.1, 0.03};
  for (auto _ : state) benchmark::DoNotOptimize(mean_and_variance_diff_bounds(m, t, ctx).variance.value);
}

void BM_UnimodalNormal(benchmark::State& state) {
  const DensityModel m = make_normal(0.4, 2.0);
  for (auto _ : state)
    benchmark::DoNotOptimize(unimodal_moment_bound(m, 3, Scheme::ToNearest, Precision::eps(1e-3), false).value);
}

void BM_CenteredExpansion(benchmark::State& state) {
  const DensityModel m = make_exponential(1.5);
  const int k = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(centered_moment_first_order(m, k, Precision::delta(0.01)).value);
}

void BM_FloatBinades(benchmark::State& state) {
  const DensityModel m = make_exponential(1.0);
  const FloatSystem fs{8, -static_cast<int>(state.range(0)), 8, true};
  for (auto _ : state) benchmark::DoNotOptimize(float_moment_bound(m, fs, 1, Scheme::ToNearest, true).total);
}

void BM_NormalPartial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(normal_partial_constant(1.0, 2.0, 3, 1));
}

}  // namespace

BENCHMARK(BM_TierBounds)->DenseRange(0, 3);
BENCHMARK(BM_UnimodalNormal);
BENCHMARK(BM_CenteredExpansion)->DenseRange(2, 6, 2);
BENCHMARK(BM_FloatBinades)->Arg(8)->Arg(32)->Arg(120);
BENCHMARK(BM_NormalPartial);

BENCHMARK_MAIN();
