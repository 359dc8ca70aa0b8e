#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "rbound/error.hpp"
#include "rbound/rounding.hpp"

using namespace rbound;

TEST(Rounding, DeterministicSchemes) {
  const Grid g = Grid::uniform(0.5, 0.0);  // integers
  EXPECT_EQ(round_value(g, Scheme::TowardZero, 1.7).value, 1.0);
  EXPECT_EQ(round_value(g, Scheme::TowardZero, -1.7).value, -1.0);
  EXPECT_EQ(round_value(g, Scheme::AwayFromZero, 1.2).value, 2.0);
  EXPECT_EQ(round_value(g, Scheme::AwayFromZero, -1.2).value, -2.0);
  EXPECT_EQ(round_value(g, Scheme::ToNearest, 1.2).value, 1.0);
  EXPECT_EQ(round_value(g, Scheme::ToNearest, 1.7).value, 2.0);
  // Ties go away from zero on both sides.
  EXPECT_EQ(round_value(g, Scheme::ToNearest, 2.5).value, 3.0);
  EXPECT_EQ(round_value(g, Scheme::ToNearest, -2.5).value, -3.0);
  EXPECT_DOUBLE_EQ(err_value(g, Scheme::ToNearest, 1.2), -0.2);
}

TEST(Rounding, StochasticNeedsVariate) {
  const Grid g = Grid::uniform(0.5, 0.0);
  try {
    round_value(g, Scheme::Stochastic, 0.3);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::MissingVariate);
  }
  EXPECT_EQ(round_value(g, Scheme::Stochastic, 0.3, 0.29).value, 1.0);
  EXPECT_EQ(round_value(g, Scheme::Stochastic, 0.3, 0.31).value, 0.0);
  EXPECT_EQ(round_value(g, Scheme::Stochastic, 2.0, 0.0).value, 2.0);
}

TEST(Rounding, OddSymmetryOnSymmetricGrids) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-20, 20);
  const Grid grids[] = {Grid::uniform(0.3, 0.0), Grid::uniform(0.3, 0.3), Grid::floating(4, -3, 5)};
  for (const Grid& g : grids)
    for (Scheme s : {Scheme::TowardZero, Scheme::AwayFromZero, Scheme::ToNearest})
      for (int i = 0; i < 2000; ++i) {
        const double x = u(rng);
        EXPECT_EQ(round_value(g, s, -x).value, -round_value(g, s, x).value);
      }
  // Exact ties stay odd under nearest.
  const Grid g = Grid::uniform(0.5, 0.0);
  for (double t = 0.5; t < 10; t += 1.0) EXPECT_EQ(round_value(g, Scheme::ToNearest, -t).value, -round_value(g, Scheme::ToNearest, t).value);
}

TEST(Rounding, AssumptionOneHolds) {
  std::mt19937_64 rng(5);
  const Grid g = Grid::floating(6, -4, 6);
  const GapStats gs = g.gap_stats(0.0625, 64.0);
  std::uniform_real_distribution<double> u(0.0625, 64.0);
  for (Scheme s : {Scheme::TowardZero, Scheme::AwayFromZero, Scheme::ToNearest, Scheme::Stochastic}) {
    const EpsDelta ed = scheme_eps_delta(s, gs.eps0, gs.delta0);
    for (int i = 0; i < 5000; ++i) {
      const double x = u(rng);
      const double e = err_value(g, s, x, std::uniform_real_distribution<double>(0, 1)(rng));
      EXPECT_LE(std::fabs(e), ed.eps * std::fabs(x) * (1 + 1e-15)) << scheme_name(s) << " " << x;
      EXPECT_LE(std::fabs(e), ed.delta * (1 + 1e-15));
    }
  }
}

TEST(Rounding, TableOneValues) {
  const double e0 = 0.25, d0 = 0.5;
  EXPECT_DOUBLE_EQ(scheme_eps_delta(Scheme::TowardZero, e0, d0).eps, 0.2);
  EXPECT_DOUBLE_EQ(scheme_eps_delta(Scheme::TowardZero, e0, d0).delta, 0.5);
  EXPECT_DOUBLE_EQ(scheme_eps_delta(Scheme::AwayFromZero, e0, d0).eps, 0.25);
  EXPECT_DOUBLE_EQ(scheme_eps_delta(Scheme::ToNearest, e0, d0).eps, 0.125);
  EXPECT_DOUBLE_EQ(scheme_eps_delta(Scheme::ToNearest, e0, d0).delta, 0.25);
  EXPECT_DOUBLE_EQ(scheme_eps_delta(Scheme::Stochastic, e0, d0).eps, 0.25);
  EXPECT_DOUBLE_EQ(scheme_eps_delta(Scheme::Stochastic, e0, d0).delta, 0.5);
}

TEST(Rounding, TableThreeConstants) {
  for (int k = 1; k <= 6; ++k) {
    for (Scheme s : {Scheme::TowardZero, Scheme::AwayFromZero, Scheme::ToNearest}) {
      EXPECT_DOUBLE_EQ(SchemeConstants(s).c(k), 1.0 / (k + 1));
      EXPECT_DOUBLE_EQ(SchemeConstants(s).d(k), 1.0 / (k + 1));
    }
    const double den = k * k + 3.0 * k + 2.0;
    EXPECT_DOUBLE_EQ(SchemeConstants(Scheme::Stochastic).c(k), 2.0 / den);
    EXPECT_DOUBLE_EQ(SchemeConstants(Scheme::Stochastic).d(k), (1.0 - (k + 3) * std::pow(2.0, -(k + 1))) / den);
  }
  EXPECT_EQ(SchemeConstants(Scheme::Stochastic).d(1), 0.0);
  EXPECT_DOUBLE_EQ(SchemeConstants(Scheme::ToNearest).beta(0.2), 1.25);
  EXPECT_DOUBLE_EQ(SchemeConstants(Scheme::TowardZero).beta(0.2), 1.25);
  EXPECT_EQ(SchemeConstants(Scheme::AwayFromZero).beta(0.2), 1.0);
  EXPECT_EQ(SchemeConstants(Scheme::Stochastic).beta(0.2), 1.0);
}

TEST(Rounding, StochasticExpectations) {
  // k = 2 on [0, 1]: x^2 (1 - x) + (1 - x)^2 x = x (1 - x).
  for (double x = 0.0; x <= 1.0; x += 0.125) {
    const StochErrPows p = stoch_expected_err_pows(0.0, 1.0, x, 2);
    EXPECT_NEAR(p.abs_pow, x * (1 - x), 1e-15);
    EXPECT_NEAR(p.signed_pow, x * (1 - x), 1e-15);
    EXPECT_EQ(stoch_expected_err_pows(0.0, 1.0, x, 1).signed_pow, 0.0);
  }
  const StochErrPows z = stoch_expected_err_pows(2.0, 2.0, 2.0, 3);
  EXPECT_EQ(z.abs_pow, 0.0);
  EXPECT_EQ(z.signed_pow, 0.0);
}

TEST(Rounding, SchemeNames) {
  for (Scheme s : {Scheme::TowardZero, Scheme::AwayFromZero, Scheme::ToNearest, Scheme::Stochastic})
    EXPECT_EQ(parse_scheme(scheme_name(s)), s);
  EXPECT_EQ(scheme_name(Scheme::ToNearest), "nearest");
  EXPECT_THROW(parse_scheme("banker"), Error);
}
