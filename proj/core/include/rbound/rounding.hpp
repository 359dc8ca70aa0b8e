#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include "rbound/grid.hpp"

namespace rbound {

/// Rounding schemes. ToNearest breaks ties away from zero, which keeps
/// rd(-x) = -rd(x) on sign-symmetric grids.
enum class Scheme { TowardZero, AwayFromZero, ToNearest, Stochastic };

/// Config/CLI names: "toward_zero", "away_from_zero", "nearest", "stochastic".
std::string_view scheme_name(Scheme s) noexcept;
Scheme parse_scheme(std::string_view name);

inline bool is_deterministic(Scheme s) noexcept { return s != Scheme::Stochastic; }

struct Rounded {
  double value = 0.0;
  bool saturated = false;
};

/// rd(x). `u` is a uniform variate in [0,1) and must be supplied for
/// Stochastic; deterministic schemes ignore it.
Rounded round_value(const Grid& grid, Scheme scheme, double x, std::optional<double> u = std::nullopt);

/// err(x) = rd(x) - x.
double err_value(const Grid& grid, Scheme scheme, double x, std::optional<double> u = std::nullopt);

/// Target chosen by a deterministic scheme inside the bracket [lo, hi].
double deterministic_target(Scheme scheme, double lo, double hi, double x);

struct EpsDelta {
  double eps = 0.0;
  double delta = 0.0;
};

/// Error-model constants implied by grid gap statistics (eps0, delta0).
EpsDelta scheme_eps_delta(Scheme scheme, double eps0, double delta0);

/// Scheme constants c(k), d(k), beta(eps) used by the interval error bounds.
class SchemeConstants {
 public:
  explicit SchemeConstants(Scheme s) : scheme_(s) {}

  /// Leading-term constant for integrals of |err|^k.
  double c(int k) const;
  /// Endpoint constant for signed integrals of err^k, k odd.
  double d(int k) const;
  /// Inflation of eps in the endpoint terms.
  double beta(double eps) const;

  Scheme scheme() const noexcept { return scheme_; }

 private:
  Scheme scheme_;
};

inline SchemeConstants scheme_constants(Scheme s) { return SchemeConstants(s); }

struct StochErrPows {
  double abs_pow = 0.0;     // E_rd |err(x)|^k
  double signed_pow = 0.0;  // E_rd err(x)^k
};

/// Two-outcome expectations of err^k under stochastic rounding of x in the
/// cell [lo, hi]. A degenerate cell (lo == hi) yields (0, 0).
StochErrPows stoch_expected_err_pows(double lo, double hi, double x, int k);

}  // namespace rbound
