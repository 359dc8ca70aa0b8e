#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rbound/distributions.hpp"
#include "rbound/grid.hpp"
#include "rbound/rounding.hpp"

namespace rbound {

enum class OracleMethod { PerCellQuadrature, MonteCarlo, ClosedForm };

struct OracleResult {
  double value = 0.0;
  double abs_error_estimate = 0.0;
  OracleMethod method = OracleMethod::PerCellQuadrature;
  std::uint64_t samples = 0;  // Monte Carlo only
  std::uint64_t seed = 0;     // Monte Carlo only
};

struct OracleOptions {
  /// 0 selects adaptive Gauss-Kronrod per piece; otherwise a fixed
  /// Gauss-Legendre rule of this order (7, 10, 15, 20, 25 or 30).
  int gauss_order = 0;
  double rel_tol = 1e-13;
  /// Extra points where the weight is not smooth (support edges, kinks).
  std::vector<double> breaks;
};

/// int_a^b w(x) err(x)^k dx (signed) or with |err|^k, cell by cell. Each cell
/// is split where err has a jump or kink. Stochastic rounding uses the
/// two-outcome expectation of err^k. Beyond the largest float the saturated
/// error is used. Throws TooManyCells above 1e8 cells.
OracleResult err_weighted_integral(const Grid& grid, Scheme scheme, const std::function<double(double)>& w, double a,
                                   double b, int k, bool signed_variant, const OracleOptions& opts = {});

/// E[err], E[(X - mu) err], E[err^2] and the derived mean and variance shifts
/// of rd(X) by per-cell quadrature over the effective support.
struct RoundedDeltas {
  double err_mean = 0.0;     // E[err] = Delta_E
  double cov_term = 0.0;     // E[(X - mu) err]
  double err_sq = 0.0;       // E[err^2]
  double abs_err = 0.0;      // E|err|
  double delta_E = 0.0;
  double delta_V = 0.0;      // 2 E[(X-mu) err] + E[err^2] - E[err]^2
  double abs_error_estimate = 0.0;
};

RoundedDeltas rounded_deltas(const DensityModel& model, const Grid& grid, Scheme scheme, const OracleOptions& opts = {});

struct MonteCarloMoments {
  std::vector<OracleResult> raw;      // E[rd(X)^k], k = 1..k_max
  std::vector<OracleResult> central;  // E[(rd(X) - E rd(X))^k], k = 1..k_max
  OracleResult delta_E;
  OracleResult delta_V;
  std::uint64_t saturated = 0;
};

/// Inverse-transform Monte Carlo. Stream 0 drives X, stream 1 the
/// stochastic rounding variates; the sample index is the counter.
MonteCarloMoments mc_rounded_moments(const DensityModel& model, const Grid& grid, Scheme scheme, int k_max,
                                     std::uint64_t n_samples, std::uint64_t seed);

struct SweepRow {
  double offset = 0.0;
  double delta_E = 0.0;
  double delta_V = 0.0;
  double err_sq = 0.0;
  std::optional<double> bound_A_E, bound_B_E, bound_C_E, bound_D_E;
  std::optional<double> bound_A_V, bound_B_V, bound_C_V, bound_D_V;
  bool dominated = true;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  int violations = 0;
  double worst_margin = 0.0;  // min over rows and tiers of (bound - |Delta|)
};

/// Offsets a = 2 delta i / n_offsets, i = 0..n_offsets-1, on the mesh of
/// half-gap delta. The scheme's Assumption-1 delta is used for tiers A and B.
/// `slack` absorbs quadrature error in the dominance check.
SweepResult offset_sweep(const DensityModel& model, double delta, int n_offsets, Scheme scheme, double slack = 1e-9);

inline constexpr const char* kSweepCsvHeader =
    "offset,delta_E,delta_V,bound_A_E,bound_B_E,bound_C_E,bound_D_E,bound_A_V,bound_B_V,bound_C_V";

std::string sweep_csv(const SweepResult& s);

enum class SlopeQuantity { DeltaE, DeltaV, AbsErrMean };

struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;
  std::vector<double> deltas;
  std::vector<double> values;  // worst-offset |quantity|
  std::vector<bool> used;
  int excluded = 0;
};

/// Least-squares slope of log|q| against log delta, each |q| the worst over
/// `probe_offsets` mesh offsets. Points below 1e-15 are excluded; fewer than
/// two usable points throws DegenerateFit.
SlopeFit convergence_slope(const DensityModel& model, Scheme scheme, SlopeQuantity quantity,
                           std::span<const double> deltas, int probe_offsets = 8);

struct SumSimulation {
  OracleResult estimate;  // E|S_n - S~_n|
  double eps = 0.0;
  double bound = 0.0;     // rounded_sum_bound with the scheme's eps
  std::uint64_t overflow_events = 0;
};

/// S~_1 = X_1, S~_k = rd(S~_{k-1} + X_k). The exact sum is accumulated in
/// double precision. eps comes from the gap statistics on the normal range
/// [2^k_min, 2^k_max].
SumSimulation simulated_sum(std::span<const DensityModel> models, const FloatSystem& fs, Scheme scheme,
                            std::uint64_t n_samples, std::uint64_t seed);

}  // namespace rbound
