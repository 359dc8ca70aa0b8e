#include <benchmark/benchmark.h>

#include "rbound/rng.hpp"
#include "rbound/rounding.hpp"

using namespace rbound;

namespace {

void round_grid(benchmark::State& state, const Grid& g, Scheme s, double span) {
  std::uint64_t i = 0;
  for (auto _ : state) {
    const double x = span * (2.0 * counter_uniform(1, 0, i) - 1.0);
    benchmark::DoNotOptimize(round_value(g, s, x, counter_uniform(1, 1, i)).value);
    ++i;
  }
}

void BM_RoundMeshNearest(benchmark::State& state) { round_grid(state, Grid::uniform(0.01, 0.003), Scheme::ToNearest, 10); }
void BM_RoundMeshStochastic(benchmark::State& state) {
  round_grid(state, Grid::uniform(0.01, 0.003), Scheme::Stochastic, 10);
}
void BM_RoundBinary32(benchmark::State& state) {
  round_grid(state, Grid::floating(23, -126, 128), Scheme::ToNearest, 1e6);
}
void BM_RoundExplicit(benchmark::State& state) {
  std::vector<double> pts;
  for (int i = -5000; i <= 5000; ++i) pts.push_back(i * 0.002 + 1e-4 * (i % 7));
  round_grid(state, Grid::explicit_set(pts), Scheme::AwayFromZero, 9.9);
}

}  // namespace

BENCHMARK(BM_RoundMeshNearest);
BENCHMARK(BM_RoundMeshStochastic);
BENCHMARK(BM_RoundBinary32);
BENCHMARK(BM_RoundExplicit);

BENCHMARK_MAIN();
