#include "rbound/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "rbound/error.hpp"
#include "rbound/quadrature.hpp"
#include "rbound/shape.hpp"
#include "rbound/special.hpp"

namespace rbound {

namespace {


double ipow(double x, int k) {
  double r = 1.0;
  for (int i = 0; i < k; ++i) r *= x;
  return r;
}

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

std::string base_name(Mode m) { return m == Mode::Multiplicative ? "eps" : "delta"; }

void require_precision(Precision p) {
  if (!(p.value >= 0.0) || !std::isfinite(p.value))
    throw Error(ErrorCode::InvalidArgument, "eps/delta must be finite and nonnegative");
}

void require_order(int k, int min, const char* what) {
  if (k < min) throw Error(ErrorCode::InvalidArgument, std::string(what) + " must be >= " + std::to_string(min));
}

double finite_moment(double v, const char* what) {
  if (!std::isfinite(v)) throw Error(ErrorCode::DivergentMoment, std::string(what) + " is not finite");
  return v;
}

OrderTerm term(Mode mode, double x, int power, double value) {
  OrderTerm t;
  t.base = base_name(mode);
  t.power = power;
  t.value = value;
  const double scale = ipow(x, power);
  t.coef = scale > 0.0 ? value / scale : 0.0;
  return t;
}

// Sup of |w| on the model's effective support, with the number of maxima
// regions seen by the probe.
ShapeProbe probe_weight(const DensityModel& model, const std::function<double(double)>& w) {
  const Support s = model->effective_support();
  return probe_shape([&](double x) { return std::fabs(w(x)); }, s.lo, s.hi);
}

bool signed_scheme_ok(Scheme s) { return s == Scheme::ToNearest || s == Scheme::Stochastic; }

void require_signed(int k, Scheme s, const char* where) {
  if (k % 2 == 0) throw Error(ErrorCode::BadOrder, std::string(where) + ": the signed variant needs odd k");
  if (!signed_scheme_ok(s))
    throw Error(ErrorCode::PreconditionFailed,
                std::string(where) + ": the signed variant needs round to nearest or stochastic rounding");
}

}  // namespace

std::string_view mode_name(Mode m) noexcept { return m == Mode::Multiplicative ? "multiplicative" : "additive"; }

std::string_view tier_name(Tier t) noexcept {
  switch (t) {
    case Tier::A: return "A";
    case Tier::B: return "B";
    case Tier::C: return "C";
    case Tier::D: return "D";
  }
  return "?";
}

Tier parse_tier(std::string_view s) {
  if (s == "A" || s == "a") return Tier::A;
  if (s == "B" || s == "b") return Tier::B;
  if (s == "C" || s == "c") return Tier::C;
  if (s == "D" || s == "d") return Tier::D;
  throw Error(ErrorCode::ConfigError, "unknown tier '" + std::string(s) + "' (expected A, B, C or D)");
}

BoundReport make_report(std::string theorem, Mode mode, double x, int lead_power, double lead_value, int high_power,
                        double high_value) {
  BoundReport r;
  r.theorem = std::move(theorem);
  r.mode = mode;
  r.leading = term(mode, x, lead_power, lead_value);
  r.higher_order = term(mode, x, high_power, high_value);
  r.value = lead_value + high_value;
  return r;
}

// --- moment bounds ----------------------------------------------------------

BoundReport strong_bound(const DensityModel& model, int n, Precision p) {
  require_order(n, 1, "n");
  require_precision(p);
  if (p.mode == Mode::Additive) return make_report("strong_convergence", p.mode, p.value, n, ipow(p.value, n), n + 1, 0.0);
  const double m = finite_moment(model->abs_moment(n), "E|X|^n");
  return make_report("strong_convergence", p.mode, p.value, n, m * ipow(p.value, n), n + 1, 0.0);
}

BoundReport mixed_moment_bound(const DensityModel& model, double mu0, int m, int n, Precision p,
                               std::optional<SymmetryContext> symmetry) {
  require_order(m, 0, "m");
  require_order(n, 0, "n");
  require_precision(p);
  const double xn = ipow(p.value, n);

  if (!symmetry) {
    const double coef = p.mode == Mode::Multiplicative ? model->mixed_abs_moment(mu0, m, n) : model->abs_moment_about(mu0, m);
    finite_moment(coef, "mixed absolute moment");
    return make_report("mixed_moment", p.mode, p.value, n, coef * xn, n + 1, 0.0);
  }

  if (!is_deterministic(symmetry->scheme) || !symmetry->grid_sign_symmetric)
    throw Error(ErrorCode::SymmetryUnavailable, "rd(-x) = -rd(x) needs a deterministic scheme on a sign-symmetric grid");
  if ((m + n) % 2 == 0) throw Error(ErrorCode::SymmetryUnavailable, "the symmetric refinement needs m + n odd");
  if (mu0 != 0.0) throw Error(ErrorCode::SymmetryUnavailable, "the symmetric refinement is taken about 0 (mu0 = 0)");
  if (p.mode == Mode::Additive && m % 2 == 0)
    throw Error(ErrorCode::SymmetryUnavailable, "the additive symmetric refinement needs m odd");

  const int q = p.mode == Mode::Multiplicative ? m + n : m;
  const SymmetricSplit split(model, 0.0);
  const Support s = model->support();
  double corr = 0.0;
  if (s.lo < 0.0) {
    const double hi = std::min(0.0, s.hi);
    const double brk[] = {model->mode(), -model->mode()};
    corr = integrate([&](double x) { return ipow(x, q) * split.h(x); }, s.lo, hi, brk).value;
  }
  const double coef = finite_moment(model->raw_moment(q), "E[X^q]") - 2.0 * corr;
  BoundReport r = make_report("mixed_moment_symmetric", p.mode, p.value, n, std::max(coef, 0.0) * xn, n + 1, 0.0);
  return r;
}

BoundReport centered_moment_first_order(const DensityModel& model, int k, Precision p) {
  require_order(k, 2, "k");
  require_precision(p);
  const double mu = model->mean();
  const double b01 = mixed_moment_bound(model, mu, 0, 1, p).value;
  double lead = 0.0, high = 0.0;
  for (int i = 1; i <= k; ++i) {
    for (int j = 0; j <= i; ++j) {
      const int mm = k - i;
      const double e = j == 0 ? std::fabs(model->central_moment(mm)) : mixed_moment_bound(model, mu, mm, j, p).value;
      const double t = binomial(k, i) * binomial(i, j) * ipow(b01, i - j) * e;
      (i == 1 ? lead : high) += t;
    }
  }
  return make_report("centered_moment_expansion", p.mode, p.value, 1, lead, 2, high);
}

// --- error integrals --------------------------------------------------------

BoundReport interval_error_bound(double a, double b, int k, Scheme scheme, Precision p, bool endpoints_on_grid,
                                 bool signed_variant) {
  if (!(a < b)) throw Error(ErrorCode::InvalidArgument, "interval needs a < b");
  require_order(k, 1, "k");
  require_precision(p);
  const SchemeConstants sc(scheme);
  const double x = p.value;
  const bool mult = p.mode == Mode::Multiplicative;
  const bool on_grid = endpoints_on_grid && is_deterministic(scheme);

  if (signed_variant) {
    require_signed(k, scheme, "interval error bound");
    const double high = mult ? sc.d(k) * std::pow(std::max(std::fabs(a), std::fabs(b)), k + 1) * ipow(x, k + 1)
                       : sc.d(k) * ipow(x, k + 1);
    if (endpoints_on_grid && scheme == Scheme::ToNearest) {
      BoundReport r = make_report("error_integral_on_grid", p.mode, x, k, 0.0, k + 1, 0.0);
      r.flags.push_back("equality");
      return r;
    }
    return make_report(scheme == Scheme::Stochastic ? "error_integral_stochastic" : "error_integral", p.mode, x, k, 0.0,
                       k + 1, high);
  }

  auto spow = [k](double v) { return std::copysign(std::pow(std::fabs(v), k + 1), v); };
  const double ck = sc.c(k);
  double lead, high;
  if (mult) {
    const double ik = (spow(b) - spow(a)) / (k + 1);
    lead = ck * ik * ipow(x, k);
    high = 2.0 * ck * (std::pow(std::fabs(a), k + 1) + std::pow(std::fabs(b), k + 1)) * ipow(sc.beta(x) * x, k + 1);
  } else {
    lead = ck * (b - a) * ipow(x, k);
    high = 4.0 * ck * ipow(x, k + 1);
  }
  if (on_grid) {
    BoundReport r = make_report("error_integral_on_grid", p.mode, x, k, lead, k + 1, 0.0);
    if (!mult) r.flags.push_back("equality");
    return r;
  }
  return make_report(scheme == Scheme::Stochastic ? "error_integral_stochastic" : "error_integral", p.mode, x, k, lead,
                     k + 1, high);
}

BoundReport unimodal_moment_bound(const DensityModel& model, int k, Scheme scheme, Precision p, bool signed_variant) {
  require_order(k, 1, "k");
  require_precision(p);
  const Envelope env = envelope(model);
  const SchemeConstants sc(scheme);
  const double x = p.value;
  const bool mult = p.mode == Mode::Multiplicative;

  if (signed_variant) {
    require_signed(k, scheme, "unimodal bound");
    const double high = mult ? (k + 1) * sc.d(k) * env.weighted_integral(k) * ipow(x, k + 1)
                             : sc.d(k) * env.peak() * ipow(x, k + 1);
    return make_report("unimodal", p.mode, x, k, 0.0, k + 1, high);
  }
  double lead, high;
  if (mult) {
    lead = finite_moment(model->abs_moment(k), "E|X|^k") * ipow(x, k);
    high = 4.0 * (k + 1) * sc.c(k) * env.weighted_integral(k) * ipow(sc.beta(x) * x, k + 1);
  } else {
    lead = sc.c(k) * ipow(x, k);
    high = 4.0 * sc.c(k) * env.peak() * ipow(x, k + 1);
  }
  return make_report("unimodal", p.mode, x, k, lead, k + 1, high);
}

BoundReport sheppard_two_sided(double weight_integral, double weight_sup, int n, double delta) {
  require_order(n, 1, "n");
  if (!(delta >= 0.0)) throw Error(ErrorCode::InvalidArgument, "delta must be nonnegative");
  if (!(weight_integral >= 0.0) || !(weight_sup >= 0.0))
    throw Error(ErrorCode::InvalidArgument, "the weight must be nonnegative");
  const double center = weight_integral / (n + 1) * ipow(delta, n);
  const double radius = 4.0 * weight_sup / (n + 1) * ipow(delta, n + 1);
  BoundReport r = make_report("sheppard_two_sided", Mode::Additive, delta, n, center, n + 1, radius);
  r.two_sided = TwoSided{center, radius};
  return r;
}

BoundReport sheppard_two_sided_interval(double a, double b, int n, double delta) {
  if (!(a < b)) throw Error(ErrorCode::InvalidArgument, "interval needs a < b");
  return sheppard_two_sided(b - a, 1.0, n, delta);
}

BoundReport sheppard_two_sided(const DensityModel& model, int n, double delta) {
  check_unimodal(model);
  return sheppard_two_sided(1.0, model->peak(), n, delta);
}

// --- tiers ------------------------------------------------------------------

double tier_center(double delta, double offset, double mu) {
  const double w = 2.0 * delta;
  double a = std::fmod(offset - mu, w);
  if (a < 0.0) a += w;
  if (a >= w) a = 0.0;
  return mu + best_mesh_center(UniformMesh{delta, a});
}

namespace {

// K * d(1) * sup h_c * delta^2 for the asymmetric part h_c about c.
double split_mean_bound(const DensityModel& model, double c, double delta) {
  const SymmetricSplit split(model, c);
  const Support s = model->effective_support();
  const ShapeProbe pr = probe_shape([&](double x) { return split.h(x); }, s.lo, s.hi);
  if (!(pr.sup > 0.0)) return 0.0;
  return pr.maxima_regions * SchemeConstants(Scheme::ToNearest).d(1) * pr.sup * delta * delta;
}

}  // namespace

MeanVarianceBounds mean_and_variance_diff_bounds(const DensityModel& model, Tier tier, const TierContext& ctx) {
  const double d = ctx.delta;
  if (!(d >= 0.0) || !std::isfinite(d)) throw Error(ErrorCode::InvalidArgument, "delta must be finite and nonnegative");
  if (tier != Tier::A && !signed_scheme_ok(ctx.scheme))
    throw Error(ErrorCode::PreconditionFailed,
                "tier " + std::string(tier_name(tier)) + " needs round to nearest (or stochastic rounding for tier B)");
  if ((tier == Tier::C || tier == Tier::D) && ctx.scheme != Scheme::ToNearest)
    throw Error(ErrorCode::PreconditionFailed, "tiers C and D need round to nearest on a uniform mesh");
  if (tier == Tier::D && !ctx.offset) throw Error(ErrorCode::PreconditionFailed, "tier D needs the mesh offset");

  const double mu = model->mean();
  const Precision p = Precision::delta(d);
  double mean = 0.0, yerr = 0.0, err2 = 0.0;
  int mean_power = 1;
  double err2_lead = 0.0;

  if (tier == Tier::A) {
    mean = mixed_moment_bound(model, mu, 0, 1, p).value;
    yerr = mixed_moment_bound(model, mu, 1, 1, p).value;
    err2 = mixed_moment_bound(model, mu, 0, 2, p).value;
  } else {
    mean_power = 2;
    const SchemeConstants sc(ctx.scheme);
    const BoundReport m1 = unimodal_moment_bound(model, 1, ctx.scheme, p, true);
    mean = m1.value;
    const ShapeProbe yf = probe_weight(model, [&](double x) { return (x - mu) * model->density(x); });
    yerr = yf.maxima_regions * sc.d(1) * yf.sup * d * d;
    const BoundReport e2 = unimodal_moment_bound(model, 2, ctx.scheme, p, false);
    err2 = e2.value;
    err2_lead = e2.leading.value;
    if (tier == Tier::C) {
      double worst = 0.0;
      for (int i = -4; i <= 4; ++i) worst = std::max(worst, split_mean_bound(model, mu + 0.125 * i * d, d));
      mean = worst;
    } else if (tier == Tier::D) {
      mean = split_mean_bound(model, tier_center(d, *ctx.offset, mu), d);
    }
  }

  MeanVarianceBounds out;
  out.mean = make_report("tier_mean", Mode::Additive, d, mean_power, mean, mean_power + 1, 0.0);
  if (tier == Tier::A) {
    out.variance = make_report("tier_variance", Mode::Additive, d, 1, 2.0 * yerr, 2, err2 + 2.0 * mean * mean);
  } else {
    out.variance = make_report("tier_variance", Mode::Additive, d, 2, 2.0 * yerr + err2_lead, 3,
                               (err2 - err2_lead) + 2.0 * mean * mean);
  }
  out.mean.tier = out.variance.tier = tier;
  if (ctx.scheme == Scheme::Stochastic) out.mean.flags.push_back("stochastic constants");
  return out;
}

// --- float worked example ---------------------------------------------------

FloatMomentBound float_moment_bound(const DensityModel& model, const FloatSystem& fs, int k, Scheme scheme,
                                    bool signed_variant) {
  require_order(k, 1, "k");
  if (signed_variant) require_signed(k, scheme, "float moment bound");
  Grid::floating(fs.mantissa_bits, fs.k_min, fs.k_max, fs.subnormals);  // validates fs
  const double top = std::ldexp(1.0, fs.k_max);
  const SchemeConstants sc(scheme);
  // Half-gap under nearest, full gap otherwise.
  const double gap_scale = scheme == Scheme::ToNearest ? 1.0 : 2.0;

  FloatMomentBound out;
  out.eps = std::ldexp(1.0, -fs.mantissa_bits - 1);
  const Support eff = model->effective_support();
  const std::vector<FloatCell> cells = float_cells(fs, 0.0, top);
  double sum = 0.0;
  int fallbacks = 0;
  bool tail_small = true;

  for (const double side : {1.0, -1.0}) {
    const double wlo = side > 0 ? std::max(0.0, eff.lo) : std::max(0.0, -eff.hi);
    const double whi = side > 0 ? eff.hi : -eff.lo;
    if (!(wlo < whi)) continue;
    auto g = [&](double x) { return model->density(side * x); };

    for (const FloatCell& cell : cells) {
      if (cell.hi <= wlo || cell.lo >= whi) continue;
      const double dd = gap_scale * cell.half_gap;
      const int changes = derivative_sign_changes(g, cell.lo, cell.hi);
      if (changes > 1) {
        // Not piecewise monotone: fall back to |E[err^k; cell]| <= delta^k P(cell).
        const double a = side > 0 ? cell.lo : -cell.hi, b = side > 0 ? cell.hi : -cell.lo;
        sum += ipow(dd, k) * std::max(model->cdf(b) - model->cdf(a), 0.0);
        ++fallbacks;
        continue;
      }
      const ShapeProbe pr = probe_shape(g, cell.lo, cell.hi, 257);
      if (signed_variant) {
        if (scheme == Scheme::Stochastic && k == 1) continue;
        const double shifted_sup = pr.sup - pr.inf;
        if (!(shifted_sup > 0.0)) continue;
        const ShapeProbe sh = probe_shape([&](double x) { return g(x) - pr.inf; }, cell.lo, cell.hi, 257);
        sum += std::max(sh.maxima_regions, 1) * sc.d(k) * shifted_sup * ipow(dd, k + 1);
      } else {
        sum += pr.sup * sc.c(k) * (cell.hi - cell.lo) * ipow(dd, k);
      }
    }

    if (whi > top) {
      tail_small = false;
      const double r = integrate(
                           [&](double x) {
                             const double e = top - x;
                             return g(x) * (signed_variant ? ipow(e, k) : ipow(std::fabs(e), k));
                           },
                           top, side > 0 ? model->support().hi : -model->support().lo)
                           .value;
      out.remainder += signed_variant ? side * r : std::fabs(r);
    }
  }

  const int power = signed_variant ? k + 1 : k;
  out.report = signed_variant ? make_report("float_binade", Mode::Multiplicative, out.eps, k, 0.0, k + 1, sum)
                              : make_report("float_binade", Mode::Multiplicative, out.eps, k, sum, k + 1, 0.0);
  out.coefficient = sum / ipow(out.eps, power);
  out.tail_negligible = tail_small;
  out.total = sum + std::fabs(out.remainder);
  if (tail_small) out.report.flags.push_back("tail negligible");
  if (fallbacks > 0) out.report.flags.push_back("binade fallback x" + std::to_string(fallbacks));
  if (!signed_variant) out.report.flags.push_back("sup-weighted cells");
  return out;
}

double normal_partial_constant(double mu, double sigma2, int m, int n) {
  if (n < 1 || n % 2 == 0) throw Error(ErrorCode::BadOrder, "normal partial moment bound needs n odd");
  require_order(m, 0, "m");
  if (!(sigma2 > 0.0)) throw Error(ErrorCode::InvalidArgument, "sigma2 must be positive");
  const double s = std::sqrt(m * sigma2);
  const double xr = mu + s;
  const double z = (xr - mu) / std::sqrt(sigma2);
  const double fx = std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi * sigma2);
  const double t1 = 2.0 / (n + 1) * std::pow(xr, n + 1) * std::pow(s, m) * fx;  // pow(0, 0) == 1
  const double t2 = std::pow(2.0, 0.5 * m) / std::sqrt(std::numbers::pi) * upper_incomplete_gamma(0.5 * (m + 1), 0.5 * m);
  return t1 + t2;
}

BoundReport normal_partial_moment_bound(double mu, double sigma2, int m, int n, double eps) {
  require_precision(Precision::eps(eps));
  const double c = normal_partial_constant(mu, sigma2, m, n);
  return make_report("normal_partial", Mode::Multiplicative, eps, n, 0.0, n + 1, c * ipow(eps, n + 1));
}

// --- applications -----------------------------------------------------------

double rounded_chebyshev(double variance, double n, double delta, double t) {
  if (!(variance >= 0.0) || !(n > 0.0) || !(delta >= 0.0))
    throw Error(ErrorCode::InvalidArgument, "rounded Chebyshev needs V >= 0, n > 0, delta >= 0");
  if (!(t > delta)) throw Error(ErrorCode::PreconditionFailed, "rounded Chebyshev needs t > delta");
  const double q = (std::sqrt(variance) + delta) / (t - delta);
  return q * q / n;
}

MeasurementPlan plan_measurement(double variance, double c, double p, std::optional<long long> n) {
  if (!(variance > 0.0) || !(c > 0.0) || !(p > 0.0 && p <= 1.0))
    throw Error(ErrorCode::InvalidArgument, "plan needs V > 0, c > 0 and 0 < p <= 1");
  const double threshold = 1.0 / (p * c * c);
  MeasurementPlan out;
  out.n_min = static_cast<long long>(std::ceil(threshold)) + 1;
  out.n = n.value_or(out.n_min);
  if (!(static_cast<double>(out.n) > threshold))
    throw Error(ErrorCode::InfeasibleBudget,
                "n = " + std::to_string(out.n) + " does not exceed 1/(p c^2) = " + std::to_string(threshold));
  const double snp = std::sqrt(static_cast<double>(out.n) * p);
  out.delta_max = (c * snp - 1.0) / (snp + 1.0) * std::sqrt(variance);
  return out;
}

double rounded_sum_bound(std::span<const double> abs_means, double eps) {
  if (abs_means.empty()) return 0.0;
  double s = 0.0;
  for (double m : abs_means) {
    if (!std::isfinite(m) || m < 0.0) throw Error(ErrorCode::InvalidArgument, "E|X_i| must be finite and nonnegative");
    s += m;
  }
  return static_cast<double>(abs_means.size() - 1) * s * eps;
}

}  // namespace rbound
