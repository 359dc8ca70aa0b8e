#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rbound/distributions.hpp"
#include "rbound/grid.hpp"
#include "rbound/rounding.hpp"

namespace rbound {

enum class Mode { Multiplicative, Additive };

std::string_view mode_name(Mode m) noexcept;

/// The error-model constant: eps (multiplicative) or delta (additive).
struct Precision {
  Mode mode = Mode::Additive;
  double value = 0.0;

  static Precision eps(double e) { return {Mode::Multiplicative, e}; }
  static Precision delta(double d) { return {Mode::Additive, d}; }
};

/// Assumption tiers of increasing information about (F, rd):
/// A bounded error only, B round to nearest, C uniform spacing with unknown
/// offset, D uniform spacing with known offset.
enum class Tier { A, B, C, D };

std::string_view tier_name(Tier t) noexcept;
Tier parse_tier(std::string_view s);

/// coef * base^power, base being "eps" or "delta".
struct OrderTerm {
  double coef = 0.0;
  int power = 0;
  std::string base = "delta";
  double value = 0.0;
};

struct TwoSided {
  double center = 0.0;
  double radius = 0.0;
};

struct BoundReport {
  double value = 0.0;  // leading.value + higher_order.value
  OrderTerm leading;
  OrderTerm higher_order;
  std::string theorem;
  std::optional<Tier> tier;
  Mode mode = Mode::Additive;
  std::optional<TwoSided> two_sided;
  std::vector<std::string> flags;
};

/// Builds a report from the two term values, deriving coefficients from
/// the base magnitude x. A zero base leaves the coefficients at 0.
BoundReport make_report(std::string theorem, Mode mode, double x, int lead_power, double lead_value, int high_power,
                        double high_value);

// --- moment bounds ----------------------------------------------------------

/// E|err|^n <= E|X|^n eps^n, or delta^n.
BoundReport strong_bound(const DensityModel& model, int n, Precision p);

/// Used by the symmetric variant: the scheme must satisfy rd(-x) = -rd(x),
/// which needs a deterministic scheme on a sign-symmetric grid.
struct SymmetryContext {
  Scheme scheme = Scheme::ToNearest;
  bool grid_sign_symmetric = true;
};

/// Bound on |E[(X - mu0)^m err(X)^n]|. With `symmetry`, the odd-symmetry
/// refinement about 0 is used (mu0 must be 0 and m + n odd; additive also
/// needs m odd).
BoundReport mixed_moment_bound(const DensityModel& model, double mu0, int m, int n, Precision p,
                               std::optional<SymmetryContext> symmetry = std::nullopt);

/// |M_k[rd(X)] - M_k[X]| through the binomial expansion in
/// e_{m,n} = E[(X - mu)^m err^n]; e_{m,0} are exact central moments.
BoundReport centered_moment_first_order(const DensityModel& model, int k, Precision p);

// --- error integrals --------------------------------------------------------

/// Bound on int_a^b |err|^k dx, or |int_a^b err^k dx| when `signed_variant`.
/// For Stochastic rd the integrand is the rounding expectation.
BoundReport interval_error_bound(double a, double b, int k, Scheme scheme, Precision p, bool endpoints_on_grid,
                                 bool signed_variant = false);

/// Bound on int f |err|^k (or |int f err^k| when signed) for a unimodal f.
BoundReport unimodal_moment_bound(const DensityModel& model, int k, Scheme scheme, Precision p, bool signed_variant);

/// Two-sided estimate of int w |err|^n on a mesh of half-gap delta under
/// round to nearest: center weight_integral/(n+1) delta^n, radius
/// 4 weight_sup/(n+1) delta^{n+1}. Valid for unimodal w; w = 1 on [a, b]
/// gives the unweighted form.
BoundReport sheppard_two_sided(double weight_integral, double weight_sup, int n, double delta);
BoundReport sheppard_two_sided_interval(double a, double b, int n, double delta);
BoundReport sheppard_two_sided(const DensityModel& model, int n, double delta);

// --- mean and variance tiers ------------------------------------------------

struct TierContext {
  Scheme scheme = Scheme::ToNearest;
  double delta = 0.0;            // Assumption-1 constant; the mesh half-gap for tiers C and D
  std::optional<double> offset;  // mesh offset a, tier D only
};

struct MeanVarianceBounds {
  BoundReport mean;      // |E[rd X] - E[X]|
  BoundReport variance;  // |V[rd X] - V[X]|
};

/// Bounds via |dV| <= 2|E[(X-mu) err]| + E[err^2] + 2 E[err]^2.
MeanVarianceBounds mean_and_variance_diff_bounds(const DensityModel& model, Tier tier, const TierContext& ctx);

/// Mesh point or midpoint nearest mu for the mesh {2 delta z + a}.
double tier_center(double delta, double offset, double mu);

// --- worked examples --------------------------------------------------------

struct FloatMomentBound {
  BoundReport report;       // sum of per-binade terms
  double remainder = 0.0;   // overflow tail, both signs
  double total = 0.0;       // report.value + |remainder|
  double eps = 0.0;         // 2^{-m-1}
  double coefficient = 0.0; // report.value / eps^{k+1} (signed) or / eps^k
  bool tail_negligible = false;
};

/// Per-binade bound for int f err^k over a FloatSystem, summed over both signs.
FloatMomentBound float_moment_bound(const DensityModel& model, const FloatSystem& fs, int k, Scheme scheme,
                                    bool signed_variant);

/// The constant n_{m,n} for normal partial moments and the bound n_{m,n} eps^{n+1}.
double normal_partial_constant(double mu, double sigma2, int m, int n);
BoundReport normal_partial_moment_bound(double mu, double sigma2, int m, int n, double eps);

// --- applications -----------------------------------------------------------

/// (1/n) ((sqrt V + delta) / (t - delta))^2.
double rounded_chebyshev(double variance, double n, double delta, double t);

struct MeasurementPlan {
  long long n_min = 0;
  long long n = 0;
  double delta_max = 0.0;
};

/// Smallest admissible sample count and the measurement error allowed at n
/// samples (n defaults to n_min) to keep the sample mean within c standard
/// deviations with probability 1 - p.
MeasurementPlan plan_measurement(double variance, double c, double p, std::optional<long long> n = std::nullopt);

/// (n - 1) sum E|X_i| eps; the O(eps^2) remainder is not quantified.
double rounded_sum_bound(std::span<const double> abs_means, double eps);

}  // namespace rbound
