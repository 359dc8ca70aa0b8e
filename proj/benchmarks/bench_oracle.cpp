#include <benchmark/benchmark.h>

#include "rbound/oracle.hpp"

using namespace rbound;

namespace {

void BM_RoundedDeltasSemicircle(benchmark::State& state) {
  const DensityModel m = make_semicircle(1.0);
  const double d = 1.0 / static_cast<double>(state.range(0));
  const Grid g = Grid::uniform(d, 0.3 * d);
  for (auto _ : state) benchmark::DoNotOptimize(rounded_deltas(m, g, Scheme::ToNearest).delta_V);
  state.SetComplexityN(state.range(0));
}

void BM_RoundedDeltasGauss(benchmark::State& state) {
  const DensityModel m = make_normal(0.2, 1.0);
  const Grid g = Grid::uniform(0.05, 0.01);
  OracleOptions o;
  o.gauss_order = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(rounded_deltas(m, g, Scheme::ToNearest, o).delta_V);
}

void BM_MonteCarlo(benchmark::State& state) {
  const DensityModel m = make_normal(0.0, 1.0);
  const Grid g = Grid::uniform(0.05, 0.01);
  for (auto _ : state)
    benchmark::DoNotOptimize(
        mc_rounded_moments(m, g, Scheme::Stochastic, 2, static_cast<std::uint64_t>(state.range(0)), 7).delta_E.value);
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_OffsetSweep(benchmark::State& state) {
  const DensityModel m = make_semicircle(1.0);
  for (auto _ : state) benchmark::DoNotOptimize(offset_sweep(m, 0.1, 64, Scheme::ToNearest).violations);
}

void BM_SimulatedSum(benchmark::State& state) {
  const std::vector<DensityModel> xs(10, make_uniform(0.0, 1.0));
  for (auto _ : state)
    benchmark::DoNotOptimize(simulated_sum(xs, FloatSystem{8, -8, 8, true}, Scheme::ToNearest, 10000, 1).estimate.value);
}

}  // namespace

BENCHMARK(BM_RoundedDeltasSemicircle)->RangeMultiplier(4)->Range(8, 512)->Complexity(benchmark::oN);
BENCHMARK(BM_RoundedDeltasGauss)->Arg(7)->Arg(15)->Arg(30);
BENCHMARK(BM_MonteCarlo)->Arg(10000)->Arg(100000);
BENCHMARK(BM_OffsetSweep)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SimulatedSum)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
