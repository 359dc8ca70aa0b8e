#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <vector>

#include "rbound/distributions.hpp"
#include "rbound/error.hpp"
#include "rbound/quadrature.hpp"

using namespace rbound;

namespace {

constexpr double kPi = std::numbers::pi;

// Independent quadrature of w * f over the declared support.
double quad(const DensityModel& m, const std::function<double(double)>& w) {
  const Support s = m->support();
  std::vector<double> br{m->mode(), m->mean()};
  return integrate([&](double x) { return w(x) * m->density(x); }, s.lo, s.hi, br).value;
}

std::vector<DensityModel> family() {
  return {make_semicircle(1.0), make_semicircle(0.7, 0.4), make_normal(0.0, 1.0), make_normal(1.5, 0.3),
          make_exponential(2.0), make_uniform(-0.3, 1.1)};
}

}  // namespace

TEST(Distributions, SemicircleSpecValues) {
  const DensityModel s = make_semicircle(1.0);
  EXPECT_NEAR(s->density(0.0), 2.0 / kPi, 1e-15);
  EXPECT_NEAR(s->abs_moment(1), 4.0 / (3.0 * kPi), 1e-14);
  EXPECT_NEAR(s->central_moment(2), 0.25, 1e-15);
  EXPECT_NEAR(s->peak(), 2.0 / kPi, 1e-15);
  EXPECT_EQ(s->mode(), 0.0);
}

TEST(Distributions, OtherSpecValues) {
  const DensityModel e = make_exponential(2.0);
  EXPECT_EQ(e->density(0.0), 2.0);
  EXPECT_LT(e->density(0.5), e->density(0.1));
  EXPECT_NEAR(make_normal(0.0, 1.0)->raw_moment(4), 3.0, 1e-12);
  EXPECT_NEAR(make_uniform(0.0, 1.0)->central_moment(2), 1.0 / 12.0, 1e-15);
}

TEST(Distributions, Normalization) {
  for (const DensityModel& m : family()) EXPECT_NEAR(quad(m, [](double) { return 1.0; }), 1.0, 1e-10) << m->kind();
}

TEST(Distributions, AnalyticMomentsMatchQuadrature) {
  for (const DensityModel& m : family()) {
    const double mu = m->mean();
    EXPECT_NEAR(mu, quad(m, [](double x) { return x; }), 1e-10);
    for (int k = 1; k <= 6; ++k) {
      const double raw = quad(m, [k](double x) { return std::pow(x, k); });
      const double cen = quad(m, [&](double x) { return std::pow(x - mu, k); });
      const double abs = quad(m, [&](double x) { return std::pow(std::fabs(x - 0.2), k); });
      const double mix = quad(m, [&](double x) { return std::pow(std::fabs(x - 0.2), k) * std::fabs(x); });
      const double tol = 1e-8;
      EXPECT_NEAR(m->raw_moment(k), raw, tol * std::max(1.0, std::fabs(raw))) << m->kind() << " k=" << k;
      EXPECT_NEAR(m->central_moment(k), cen, tol * std::max(1.0, std::fabs(cen))) << m->kind() << " k=" << k;
      EXPECT_NEAR(m->abs_moment_about(0.2, k), abs, tol * std::max(1.0, abs)) << m->kind() << " k=" << k;
      EXPECT_NEAR(m->mixed_abs_moment(0.2, k, 1), mix, tol * std::max(1.0, mix)) << m->kind() << " k=" << k;
    }
  }
}

TEST(Distributions, QuantileInvertsCdf) {
  for (const DensityModel& m : family())
    for (double p : {0.01, 0.2, 0.5, 0.77, 0.99}) {
      const double x = m->quantile(p);
      EXPECT_NEAR(m->cdf(x), p, 1e-10) << m->kind();
      // Density is the derivative of the cdf away from support edges.
      const double h = 1e-5;
      if (m->kind() != "uniform" || (x - h > -0.3 && x + h < 1.1)) {
        EXPECT_NEAR((m->cdf(x + h) - m->cdf(x - h)) / (2 * h), m->density(x), 1e-6) << m->kind();
      }
    }
}

TEST(Distributions, EnvelopeSpecValues) {
  EXPECT_NEAR(envelope(make_semicircle(1.0)).weighted_integral(0), 0.5, 1e-10);
  EXPECT_NEAR(envelope(make_exponential(1.0)).weighted_integral(1), 1.0, 1e-10);
  const Envelope shifted = envelope(make_semicircle(1.0, 2.0));
  for (double x = 0.0; x <= 2.0; x += 0.25) EXPECT_NEAR(shifted.f_hat(x), 2.0 / kPi, 1e-14);
  EXPECT_NEAR(shifted.f_hat(2.5), make_semicircle(1.0, 2.0)->density(2.5), 1e-14);
}

TEST(Distributions, EnvelopeDominates) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-4, 4);
  for (const DensityModel& m : family()) {
    const Envelope e = envelope(m);
    for (int i = 0; i < 10000; ++i) {
      const double x = u(rng);
      ASSERT_GE(e.f_hat(std::fabs(x)), m->density(x)) << m->kind() << " " << x;
    }
  }
}

TEST(Distributions, EnvelopeMatchesMaxScan) {
  // f_hat(x) = sup_{|z| >= x} f(z), checked against a dense scan.
  const DensityModel m = make_normal(0.8, 0.5);
  const Envelope e = envelope(m);
  for (double x = 0.0; x < 4.0; x += 0.1) {
    double best = 0.0;
    for (double z = x; z < 8.0; z += 1e-4) best = std::max({best, m->density(z), m->density(-z)});
    EXPECT_NEAR(e.f_hat(x), best, 1e-6) << x;
  }
}

TEST(Distributions, SymmetricSplit) {
  const DensityModel s = make_semicircle(1.0);
  const SymmetricSplit z = symmetric_split(s, 0.0);
  for (double x = -1.0; x <= 1.0; x += 0.05) EXPECT_NEAR(z.h(x), 0.0, 1e-15);
  const SymmetricSplit c = symmetric_split(s, 0.1);
  EXPECT_NEAR(c.h(-0.9), s->density(-0.9), 1e-15);
  EXPECT_EQ(c.h(0.5), 0.0);
  for (const DensityModel& m : family()) {
    const SymmetricSplit sp = symmetric_split(m, 0.3);
    for (double x = -3.0; x <= 3.0; x += 0.01) {
      EXPECT_NEAR(sp.g(x) + sp.h(x), m->density(x), 1e-12);
      EXPECT_NEAR(sp.g(x), sp.g(0.6 - x), 1e-12);
    }
  }
}

TEST(Distributions, CustomDensity) {
  const DensityModel tri =
      make_custom("triangle", [](double x) { return std::max(0.0, 1.0 - std::fabs(x)); }, {-1.0, 1.0}, 0.0);
  EXPECT_NEAR(tri->central_moment(2), 1.0 / 6.0, 1e-10);
  EXPECT_NEAR(tri->quantile(0.5), 0.0, 1e-10);
  try {
    make_custom("bimodal", [](double x) { return 1.5 * x * x; }, {-1.0, 1.0}, 0.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotUnimodal);
  }
  EXPECT_THROW(make_custom("unnormalized", [](double) { return 1.0; }, {0.0, 2.0}, 1.0), Error);
}

TEST(Distributions, InvalidParameters) {
  EXPECT_THROW(make_semicircle(0.0), Error);
  EXPECT_THROW(make_normal(0.0, -1.0), Error);
  EXPECT_THROW(make_exponential(0.0), Error);
  EXPECT_THROW(make_uniform(1.0, 1.0), Error);
}
