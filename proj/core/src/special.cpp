#include "rbound/special.hpp"

#include <cmath>
#include <limits>

#include "rbound/error.hpp"

namespace rbound {

namespace {

constexpr double kTol = 1e-15;
constexpr int kMaxIter = 10000;

// gamma(s, x) via sum_{n>=0} x^n / (s (s+1) ... (s+n)), times x^s e^{-x}.
double lower_series(double s, double x) {
  if (x == 0.0) return 0.0;
  double term = 1.0 / s;
  double sum = term;
  for (int n = 1; n < kMaxIter; ++n) {
    term *= x / (s + n);
    sum += term;
    if (std::fabs(term) < std::fabs(sum) * kTol) break;
  }
  return sum * std::exp(s * std::log(x) - x);
}

// Gamma(s, x) via the continued fraction
// e^{-x} x^s / (x + 1 - s - 1 (1 - s) / (x + 3 - s - ...)), modified Lentz.
double upper_fraction(double s, double x) {
  constexpr double tiny = std::numeric_limits<double>::min() / kTol;
  double b = x + 1.0 - s;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < kMaxIter; ++i) {
    const double an = -i * (i - s);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < kTol) break;
  }
  return std::exp(s * std::log(x) - x) * h;
}

void check(double s, double x) {
  if (!(s > 0.0) || !(x >= 0.0)) throw Error(ErrorCode::InvalidArgument, "incomplete gamma needs s > 0 and x >= 0");
}

}  // namespace

double upper_incomplete_gamma(double s, double x) {
  check(s, x);
  if (x < s + 1.0) return std::tgamma(s) - lower_series(s, x);
  return upper_fraction(s, x);
}

double lower_incomplete_gamma(double s, double x) {
  check(s, x);
  if (x < s + 1.0) return lower_series(s, x);
  return std::tgamma(s) - upper_fraction(s, x);
}

}  // namespace rbound
