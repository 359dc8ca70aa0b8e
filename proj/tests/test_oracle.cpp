#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <vector>

#include "rbound/bounds.hpp"
#include "rbound/error.hpp"
#include "rbound/oracle.hpp"
#include "rbound/verify.hpp"

using namespace rbound;

namespace {

constexpr double kInfEps = std::numeric_limits<double>::infinity();

std::function<double(double)> one() {
  return [](double) { return 1.0; };
}

}  // namespace

TEST(Oracle, IntervalClosedForms) {
  const Grid g = Grid::uniform(0.5, 0.0);
  // Integer mesh, nearest: int_0^1 |err| = 1/4, int_0^1 err = 0.
  EXPECT_NEAR(err_weighted_integral(g, Scheme::ToNearest, one(), 0.0, 1.0, 1, false).value, 0.25, 1e-15);
  EXPECT_NEAR(err_weighted_integral(g, Scheme::ToNearest, one(), 0.0, 1.0, 1, true).value, 0.0, 1e-15);
  // Stochastic: E|err| over a unit cell is 2x(1-x), integral 1/3; k = 2 gives 1/6.
  EXPECT_NEAR(err_weighted_integral(g, Scheme::Stochastic, one(), 0.0, 1.0, 1, false).value, 1.0 / 3.0, 1e-14);
  EXPECT_NEAR(err_weighted_integral(g, Scheme::Stochastic, one(), 0.0, 1.0, 2, false).value, 1.0 / 6.0, 1e-14);
  // Toward zero on [0, 1): err = -x, int |err| = 1/2.
  EXPECT_NEAR(err_weighted_integral(g, Scheme::TowardZero, one(), 0.0, 1.0, 1, false).value, 0.5, 1e-15);
}

TEST(Oracle, GaussOrderInsensitive) {
  const Grid g = Grid::uniform(0.05, 0.013);
  const auto f = [](double x) { return std::exp(-x * x / 2); };
  const double adaptive = err_weighted_integral(g, Scheme::ToNearest, f, -3, 3, 2, false).value;
  for (int n : {7, 15, 30}) {
    OracleOptions o;
    o.gauss_order = n;
    EXPECT_NEAR(err_weighted_integral(g, Scheme::ToNearest, f, -3, 3, 2, false, o).value, adaptive, 1e-13) << n;
  }
}

TEST(Oracle, TooManyCells) {
  const Grid g = Grid::uniform(1e-10, 0.0);
  try {
    err_weighted_integral(g, Scheme::ToNearest, one(), 0.0, 1.0, 1, false);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::TooManyCells);
  }
}

TEST(Oracle, ExplicitGridOutOfRangeThrows) {
  const Grid g = Grid::explicit_set({-0.5, 0.0, 0.5});
  EXPECT_THROW(rounded_deltas(make_semicircle(1.0), g, Scheme::ToNearest), Error);
}

TEST(Oracle, EqualityCaseOnGrid) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0.01, 0.7);
  for (int t = 0; t < 50; ++t) {
    const double d = u(rng);
    const double off = u(rng) * d;
    const Grid g = Grid::uniform(d, off);
    // Positive cells only: directed schemes skip 0 when it is not a grid point.
    const double a = off + 2 * d, b = off + 2 * d * 9;
    for (int k = 1; k <= 4; ++k)
      for (Scheme s : {Scheme::ToNearest, Scheme::TowardZero, Scheme::AwayFromZero}) {
        const EpsDelta ed = scheme_eps_delta(s, kInfEps, 2 * d);
        const double q = err_weighted_integral(g, s, one(), a, b, k, false).value;
        const double bd = interval_error_bound(a, b, k, s, Precision::delta(ed.delta), true).value;
        EXPECT_NEAR(q, bd, 1e-12 * std::max(1.0, bd)) << scheme_name(s) << " k=" << k;
      }
  }
}

TEST(Oracle, RandomizedDominance) {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const Scheme schemes[] = {Scheme::TowardZero, Scheme::AwayFromZero, Scheme::ToNearest, Scheme::Stochastic};
  int checked = 0;
  for (int t = 0; t < 200; ++t) {
    const int which = t % 4;
    DensityModel m;
    switch (which) {
      case 0: m = make_semicircle(0.5 + 2 * u(rng), 2 * u(rng) - 1); break;
      case 1: m = make_normal(2 * u(rng) - 1, 0.2 + u(rng)); break;
      case 2: m = make_exponential(0.5 + 2 * u(rng)); break;
      default: m = make_uniform(-u(rng), 0.2 + u(rng)); break;
    }
    const Scheme s = schemes[t % 4 == 0 ? (t / 4) % 4 : (t / 3) % 4];
    const double d = 0.02 + 0.2 * u(rng);
    const Grid g = Grid::uniform(d, 2 * d * u(rng));
    const EpsDelta ed = scheme_eps_delta(s, kInfEps, 2 * d);
    const int k = 1 + (t % 3);
    const Support sup = m->effective_support();
    const auto f = [&](double x) { return m->density(x); };
    OracleOptions o;
    o.breaks = m->breakpoints();
    const double abs_q = err_weighted_integral(g, s, f, sup.lo, sup.hi, k, false, o).value;
    const BoundReport ab = unimodal_moment_bound(m, k, s, Precision::delta(ed.delta), false);
    EXPECT_LE(abs_q, ab.value * (1 + 1e-9) + 1e-12) << t;
    EXPECT_LE(abs_q, strong_bound(m, k, Precision::delta(ed.delta)).value * (1 + 1e-9)) << t;
    if (k % 2 == 1 && (s == Scheme::ToNearest || s == Scheme::Stochastic)) {
      const double sq = err_weighted_integral(g, s, f, sup.lo, sup.hi, k, true, o).value;
      const BoundReport sb = unimodal_moment_bound(m, k, s, Precision::delta(ed.delta), true);
      EXPECT_LE(std::fabs(sq), sb.value * (1 + 1e-9) + 1e-12) << t;
    }
    // Interval bound over an arbitrary window.
    const double a = -1 + u(rng), b = a + 0.1 + 2 * u(rng);
    const double iq = err_weighted_integral(g, s, one(), a, b, k, false).value;
    EXPECT_LE(iq, interval_error_bound(a, b, k, s, Precision::delta(ed.delta), false).value * (1 + 1e-12)) << t;
    ++checked;
  }
  EXPECT_EQ(checked, 200);
}

TEST(Oracle, SemicircleTierDominance) {
  const DensityModel s = make_semicircle(1.0);
  const SweepResult r = offset_sweep(s, 0.1, 64, Scheme::ToNearest);
  ASSERT_EQ(r.rows.size(), 64u);
  EXPECT_EQ(r.violations, 0);
  EXPECT_GE(r.worst_margin, 0.0);
  for (const SweepRow& row : r.rows) {
    ASSERT_TRUE(row.bound_D_E.has_value());
    EXPECT_LE(std::fabs(row.delta_E), *row.bound_C_E);
  }
  const std::string csv = sweep_csv(r);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), kSweepCsvHeader);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 65);
  EXPECT_EQ(offset_sweep(s, 0.1, 2, Scheme::Stochastic).violations, 0);
}

TEST(Oracle, VarianceShiftMatchesSheppard) {
  // V[rd X] - V[X] is close to delta^2/3 for a smooth wide density.
  const DensityModel n = make_normal(0.0, 4.0);
  const double d = 0.05;
  const RoundedDeltas r = rounded_deltas(n, Grid::uniform(d, 0.01), Scheme::ToNearest);
  EXPECT_NEAR(r.delta_V, d * d / 3, 1e-6);
  EXPECT_NEAR(r.err_sq, d * d / 3, 1e-6);
  const BoundReport sh = sheppard_two_sided(n, 2, d);
  EXPECT_LE(std::fabs(r.err_sq - sh.two_sided->center), sh.two_sided->radius);
}

TEST(MonteCarlo, AgreesWithQuadratureAndIsDeterministic) {
  const DensityModel m = make_semicircle(1.0, 0.2);
  for (Scheme s : {Scheme::ToNearest, Scheme::Stochastic, Scheme::TowardZero}) {
    const Grid g = Grid::uniform(0.15, 0.04);
    const RoundedDeltas q = rounded_deltas(m, g, s);
    const MonteCarloMoments mc = mc_rounded_moments(m, g, s, 2, 400000, 99);
    EXPECT_LE(std::fabs(mc.delta_E.value - q.delta_E), mc.delta_E.abs_error_estimate) << scheme_name(s);
    EXPECT_LE(std::fabs(mc.delta_V.value - q.delta_V), mc.delta_V.abs_error_estimate) << scheme_name(s);
    const MonteCarloMoments again = mc_rounded_moments(m, g, s, 2, 400000, 99);
    EXPECT_EQ(again.delta_E.value, mc.delta_E.value);
    EXPECT_EQ(again.raw[1].value, mc.raw[1].value);
    EXPECT_EQ(mc.delta_E.seed, 99u);
  }
  EXPECT_THROW(mc_rounded_moments(m, Grid::uniform(0.1), Scheme::ToNearest, 2, 10, 1), Error);
}

TEST(MonteCarlo, StochasticUnbiasedAtFixedPoint) {
  // Point mass approximated by a very narrow uniform inside one cell.
  const DensityModel m = make_uniform(0.3, 0.3 + 1e-9);
  const MonteCarloMoments mc = mc_rounded_moments(m, Grid::uniform(0.5, 0.0), Scheme::Stochastic, 1, 1000000, 5);
  EXPECT_LE(std::fabs(mc.delta_E.value), mc.delta_E.abs_error_estimate);
}

TEST(Slope, SmoothDensityIsSecondOrder) {
  const std::vector<double> deltas{0.125, 0.0625, 0.03125, 0.015625, 0.0078125, 0.00390625};
  const SlopeFit f = convergence_slope(make_semicircle(1.0, 0.5), Scheme::ToNearest, SlopeQuantity::DeltaE, deltas);
  EXPECT_GE(f.slope, 1.9);
  const SlopeFit a = convergence_slope(make_normal(0.5, 1.0), Scheme::TowardZero, SlopeQuantity::DeltaE, deltas);
  EXPECT_NEAR(a.slope, 1.0, 0.1);
  try {
    convergence_slope(make_normal(0.5, 1.0), Scheme::Stochastic, SlopeQuantity::DeltaE, deltas);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DegenerateFit);
  }
}

TEST(Sum, SimulationBelowFirstOrderBound) {
  const std::vector<DensityModel> xs{make_uniform(1.0, 2.0), make_uniform(1.0, 2.0), make_uniform(1.0, 2.0),
                                     make_uniform(1.0, 2.0)};
  const FloatSystem fs{8, -8, 8, true};
  const SumSimulation s = simulated_sum(xs, fs, Scheme::ToNearest, 20000, 3);
  EXPECT_DOUBLE_EQ(s.eps, std::ldexp(1.0, -9));
  EXPECT_NEAR(s.bound, 3 * 4 * 1.5 * s.eps, 1e-15);
  EXPECT_LE(s.estimate.value, s.bound);
  EXPECT_EQ(s.overflow_events, 0u);
  const SumSimulation again = simulated_sum(xs, fs, Scheme::ToNearest, 20000, 3);
  EXPECT_EQ(again.estimate.value, s.estimate.value);
}

TEST(Verify, DefaultSuiteHasNoViolations) {
  const VerifyResult r = verify_suite({});
  EXPECT_EQ(r.instances, 200);
  EXPECT_EQ(r.violations, 0) << r.worst_label;
  EXPECT_GT(r.checks.size(), 1000u);
}

TEST(Verify, HalvedBoundsAreCaught) {
  VerifyOptions o;
  o.instances = 40;
  o.bound_scale = 0.5;
  EXPECT_GT(verify_suite(o).violations, 0);
}

TEST(Verify, StochasticOnlyAndOtherSeeds) {
  VerifyOptions o;
  o.scheme = Scheme::Stochastic;
  EXPECT_EQ(verify_suite(o).violations, 0);
  for (std::uint64_t seed : {7u, 123u, 99999u}) {
    VerifyOptions s;
    s.seed = seed;
    const VerifyResult r = verify_suite(s);
    EXPECT_EQ(r.violations, 0) << seed << " " << r.worst_label;
  }
}
