#include "rbound/rounding.hpp"

#include <cmath>
#include <string>

#include "rbound/error.hpp"

namespace rbound {

std::string_view scheme_name(Scheme s) noexcept {
  switch (s) {
    case Scheme::TowardZero: return "toward_zero";
    case Scheme::AwayFromZero: return "away_from_zero";
    case Scheme::ToNearest: return "nearest";
    case Scheme::Stochastic: return "stochastic";
  }
  return "nearest";
}

Scheme parse_scheme(std::string_view name) {
  if (name == "toward_zero") return Scheme::TowardZero;
  if (name == "away_from_zero") return Scheme::AwayFromZero;
  if (name == "nearest") return Scheme::ToNearest;
  if (name == "stochastic") return Scheme::Stochastic;
  throw Error(ErrorCode::ConfigError, "unknown rounding scheme '" + std::string(name) + "'");
}

double deterministic_target(Scheme scheme, double lo, double hi, double x) {
  if (lo == hi) return lo;
  switch (scheme) {
    case Scheme::TowardZero: return x >= 0.0 ? lo : hi;
    case Scheme::AwayFromZero: return x >= 0.0 ? hi : lo;
    case Scheme::ToNearest: {
      const double mid = lo + 0.5 * (hi - lo);
      if (x < mid) return lo;
      if (x > mid) return hi;
      // tie: away from zero
      return mid >= 0.0 ? hi : lo;
    }
    case Scheme::Stochastic: break;
  }
  throw Error(ErrorCode::InvalidArgument, "stochastic rounding has no deterministic target");
}

Rounded round_value(const Grid& grid, Scheme scheme, double x, std::optional<double> u) {
  if (scheme == Scheme::Stochastic && !u) throw Error(ErrorCode::MissingVariate, "stochastic rounding needs a uniform variate");
  const Bracket b = grid.bracket(x);
  if (b.lo == b.hi) return {b.lo, b.saturated};
  if (scheme != Scheme::Stochastic) return {deterministic_target(scheme, b.lo, b.hi, x), false};
  const double p_up = (x - b.lo) / (b.hi - b.lo);
  return {*u < p_up ? b.hi : b.lo, false};
}

double err_value(const Grid& grid, Scheme scheme, double x, std::optional<double> u) {
  return round_value(grid, scheme, x, u).value - x;
}

EpsDelta scheme_eps_delta(Scheme scheme, double eps0, double delta0) {
  if (eps0 < 0.0 || delta0 < 0.0) throw Error(ErrorCode::InvalidArgument, "gap statistics must be nonnegative");
  switch (scheme) {
    case Scheme::TowardZero: return {std::isinf(eps0) ? 1.0 : eps0 / (1.0 + eps0), delta0};
    case Scheme::AwayFromZero: return {eps0, delta0};
    case Scheme::ToNearest: return {eps0 / 2.0, delta0 / 2.0};
    case Scheme::Stochastic: return {eps0, delta0};
  }
  return {eps0, delta0};
}

double SchemeConstants::c(int k) const {
  if (k < 1) throw Error(ErrorCode::BadOrder, "c(k) needs k >= 1");
  const double kk = k;
  if (scheme_ == Scheme::Stochastic) return 2.0 / (kk * kk + 3.0 * kk + 2.0);
  return 1.0 / (kk + 1.0);
}

double SchemeConstants::d(int k) const {
  if (k < 1) throw Error(ErrorCode::BadOrder, "d(k) needs k >= 1");
  const double kk = k;
  if (scheme_ == Scheme::Stochastic) return (1.0 - (kk + 3.0) * std::ldexp(1.0, -(k + 1))) / (kk * kk + 3.0 * kk + 2.0);
  return 1.0 / (kk + 1.0);
}

double SchemeConstants::beta(double eps) const {
  switch (scheme_) {
    case Scheme::TowardZero:
    case Scheme::ToNearest:
      if (!(eps < 1.0)) throw Error(ErrorCode::InvalidArgument, "beta(eps) needs eps < 1");
      return 1.0 / (1.0 - eps);
    case Scheme::AwayFromZero:
    case Scheme::Stochastic: return 1.0;
  }
  return 1.0;
}

StochErrPows stoch_expected_err_pows(double lo, double hi, double x, int k) {
  if (k < 1) throw Error(ErrorCode::BadOrder, "stoch_expected_err_pows needs k >= 1");
  if (lo == hi) return {0.0, 0.0};
  if (!(lo < hi) || x < lo || x > hi) throw Error(ErrorCode::InvalidArgument, "x must lie in the cell [lo, hi]");
  // P(down) = up / w and P(up) = down / w; written as products so the k = 1
  // signed term cancels exactly.
  const double w = hi - lo;
  const double down = x - lo;
  const double up = hi - x;
  const double abs_pow = (std::pow(down, k) * up + std::pow(up, k) * down) / w;
  const double signed_pow = (std::pow(-down, k) * up + std::pow(up, k) * down) / w;
  return {abs_pow, signed_pow};
}

}  // namespace rbound
