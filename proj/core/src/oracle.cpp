#include "rbound/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

#include "rbound/bounds.hpp"
#include "rbound/error.hpp"
#include "rbound/quadrature.hpp"
#include "rbound/rng.hpp"

namespace rbound {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kMaxCells = 1e8;

double ipow(double x, int k) {
  double r = 1.0;
  for (int i = 0; i < k; ++i) r *= x;
  return r;
}

QuadResult quad(const std::function<double(double)>& f, double a, double b, const OracleOptions& opts) {
  if (!(a < b)) return {};
  if (opts.gauss_order > 0 && std::isfinite(a) && std::isfinite(b)) return {gauss_legendre(f, a, b, opts.gauss_order), 0.0};
  return integrate(f, a, b, QuadOptions{opts.rel_tol, 18});
}

struct Moments {
  double mean = 0.0;
  double sd = 0.0;
};

Moments summarize(const std::vector<double>& v) {
  Moments m;
  if (v.empty()) return m;
  double s = 0.0;
  for (double x : v) s += x;
  m.mean = s / static_cast<double>(v.size());
  double q = 0.0;
  for (double x : v) q += (x - m.mean) * (x - m.mean);
  m.sd = v.size() > 1 ? std::sqrt(q / static_cast<double>(v.size() - 1)) : 0.0;
  return m;
}

OracleResult mc_result(const std::vector<double>& v, std::uint64_t seed) {
  const Moments m = summarize(v);
  OracleResult r;
  r.value = m.mean;
  r.abs_error_estimate = 4.0 * m.sd / std::sqrt(static_cast<double>(v.size()));
  r.method = OracleMethod::MonteCarlo;
  r.samples = v.size();
  r.seed = seed;
  return r;
}

}  // namespace

OracleResult err_weighted_integral(const Grid& grid, Scheme scheme, const std::function<double(double)>& w, double a,
                                   double b, int k, bool signed_variant, const OracleOptions& opts) {
  if (!(a < b)) throw Error(ErrorCode::InvalidArgument, "err_weighted_integral needs a < b");
  if (k < 1) throw Error(ErrorCode::InvalidArgument, "err_weighted_integral needs k >= 1");
  if (grid.cell_count(a, b) > kMaxCells) throw Error(ErrorCode::TooManyCells, "more than 1e8 cells in the range");

  auto pw = [&](double e) { return signed_variant ? ipow(e, k) : ipow(std::fabs(e), k); };
  QuadResult total;
  const double dlo = grid.domain_lo(), dhi = grid.domain_hi();

  // Saturated tails of a float system.
  if (a < dlo) {
    if (!grid.is_float()) throw Error(ErrorCode::BelowGrid, "integration range starts below the grid");
    total += quad([&](double x) { return w(x) * pw(dlo - x); }, a, std::min(b, dlo), opts);
  }
  if (b > dhi) {
    if (!grid.is_float()) throw Error(ErrorCode::AboveGrid, "integration range ends above the grid");
    total += quad([&](double x) { return w(x) * pw(dhi - x); }, std::max(a, dhi), b, opts);
  }

  std::vector<double> pts;
  for (const Cell& c : grid.cells(a, b)) {
    if (!(c.lo < c.hi)) continue;
    const Bracket br = grid.bracket(0.5 * (c.lo + c.hi));
    const double lo = br.lo, hi = br.hi;
    pts.assign({c.lo, c.hi});
    if (scheme == Scheme::ToNearest) pts.push_back(0.5 * (lo + hi));
    else if (scheme != Scheme::Stochastic) pts.push_back(0.0);
    for (double x : opts.breaks) pts.push_back(x);
    std::sort(pts.begin(), pts.end());
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
      const double x0 = std::max(pts[i], c.lo), x1 = std::min(pts[i + 1], c.hi);
      if (!(x0 < x1)) continue;
      if (scheme == Scheme::Stochastic) {
        total += quad(
            [&](double x) {
              const StochErrPows sp = stoch_expected_err_pows(lo, hi, x, k);
              return w(x) * (signed_variant ? sp.signed_pow : sp.abs_pow);
            },
            x0, x1, opts);
      } else {
        const double target = deterministic_target(scheme, lo, hi, 0.5 * (x0 + x1));
        total += quad([&](double x) { return w(x) * pw(target - x); }, x0, x1, opts);
      }
    }
  }
  return {total.value, total.abs_error, OracleMethod::PerCellQuadrature, 0, 0};
}

RoundedDeltas rounded_deltas(const DensityModel& model, const Grid& grid, Scheme scheme, const OracleOptions& opts) {
  const Support s = model->effective_support();
  OracleOptions o = opts;
  for (double x : model->breakpoints()) o.breaks.push_back(x);
  const double mu = model->mean();
  auto f = [&](double x) { return model->density(x); };
  auto yf = [&](double x) { return (x - mu) * model->density(x); };

  const OracleResult e1 = err_weighted_integral(grid, scheme, f, s.lo, s.hi, 1, true, o);
  const OracleResult cv = err_weighted_integral(grid, scheme, yf, s.lo, s.hi, 1, true, o);
  const OracleResult e2 = err_weighted_integral(grid, scheme, f, s.lo, s.hi, 2, true, o);
  const OracleResult ea = err_weighted_integral(grid, scheme, f, s.lo, s.hi, 1, false, o);

  RoundedDeltas d;
  d.err_mean = e1.value;
  d.cov_term = cv.value;
  d.err_sq = e2.value;
  d.abs_err = ea.value;
  d.delta_E = e1.value;
  d.delta_V = 2.0 * cv.value + e2.value - e1.value * e1.value;
  d.abs_error_estimate = e1.abs_error_estimate + 2.0 * cv.abs_error_estimate + e2.abs_error_estimate;
  return d;
}

MonteCarloMoments mc_rounded_moments(const DensityModel& model, const Grid& grid, Scheme scheme, int k_max,
                                     std::uint64_t n_samples, std::uint64_t seed) {
  if (n_samples < 1000) throw Error(ErrorCode::InvalidArgument, "Monte Carlo needs at least 1000 samples");
  if (k_max < 1) throw Error(ErrorCode::InvalidArgument, "k_max must be >= 1");
  MonteCarloMoments out;
  std::vector<double> xs(n_samples), rs(n_samples), es(n_samples);
  for (std::uint64_t i = 0; i < n_samples; ++i) {
    const double x = model->quantile(counter_uniform_open(seed, 0, i));
    const Rounded r = round_value(grid, scheme, x, counter_uniform(seed, 1, i));
    xs[i] = x;
    rs[i] = r.value;
    es[i] = r.value - x;
    out.saturated += r.saturated ? 1 : 0;
  }
  std::vector<double> tmp(n_samples);
  for (int k = 1; k <= k_max; ++k) {
    for (std::uint64_t i = 0; i < n_samples; ++i) tmp[i] = ipow(rs[i], k);
    out.raw.push_back(mc_result(tmp, seed));
  }
  const double rbar = out.raw.front().value;
  for (int k = 1; k <= k_max; ++k) {
    for (std::uint64_t i = 0; i < n_samples; ++i) tmp[i] = ipow(rs[i] - rbar, k);
    out.central.push_back(mc_result(tmp, seed));
  }
  out.delta_E = mc_result(es, seed);
  const double xbar = summarize(xs).mean;
  for (std::uint64_t i = 0; i < n_samples; ++i) tmp[i] = ipow(rs[i] - rbar, 2) - ipow(xs[i] - xbar, 2);
  out.delta_V = mc_result(tmp, seed);
  return out;
}

SweepResult offset_sweep(const DensityModel& model, double delta, int n_offsets, Scheme scheme, double slack) {
  if (n_offsets < 2) throw Error(ErrorCode::InvalidArgument, "offset sweep needs at least 2 offsets");
  if (!(delta > 0.0)) throw Error(ErrorCode::InvalidArgument, "delta must be positive");
  const double ed = scheme_eps_delta(scheme, kInf, 2.0 * delta).delta;
  const bool tier_b = scheme == Scheme::ToNearest || scheme == Scheme::Stochastic;
  const bool tier_cd = scheme == Scheme::ToNearest;

  const MeanVarianceBounds ta = mean_and_variance_diff_bounds(model, Tier::A, {scheme, ed, std::nullopt});
  std::optional<MeanVarianceBounds> tb, tc;
  if (tier_b) tb = mean_and_variance_diff_bounds(model, Tier::B, {scheme, ed, std::nullopt});
  if (tier_cd) tc = mean_and_variance_diff_bounds(model, Tier::C, {scheme, delta, std::nullopt});

  SweepResult out;
  out.worst_margin = kInf;
  for (int i = 0; i < n_offsets; ++i) {
    SweepRow row;
    row.offset = 2.0 * delta * i / n_offsets;
    const Grid grid = Grid::uniform(delta, row.offset);
    const RoundedDeltas d = rounded_deltas(model, grid, scheme);
    row.delta_E = d.delta_E;
    row.delta_V = d.delta_V;
    row.err_sq = d.err_sq;
    row.bound_A_E = ta.mean.value;
    row.bound_A_V = ta.variance.value;
    if (tb) {
      row.bound_B_E = tb->mean.value;
      row.bound_B_V = tb->variance.value;
    }
    if (tc) {
      row.bound_C_E = tc->mean.value;
      row.bound_C_V = tc->variance.value;
      const MeanVarianceBounds td = mean_and_variance_diff_bounds(model, Tier::D, {scheme, delta, row.offset});
      row.bound_D_E = td.mean.value;
      row.bound_D_V = td.variance.value;
    }
    auto check = [&](const std::optional<double>& bound, double v) {
      if (!bound) return;
      const double margin = *bound - std::fabs(v);
      out.worst_margin = std::min(out.worst_margin, margin);
      if (margin < -slack) row.dominated = false;
    };
    for (const auto* b : {&row.bound_A_E, &row.bound_B_E, &row.bound_C_E, &row.bound_D_E}) check(*b, row.delta_E);
    for (const auto* b : {&row.bound_A_V, &row.bound_B_V, &row.bound_C_V, &row.bound_D_V}) check(*b, row.delta_V);
    if (!row.dominated) ++out.violations;
    out.rows.push_back(row);
  }
  return out;
}

std::string sweep_csv(const SweepResult& s) {
  std::string out = kSweepCsvHeader;
  out += '\n';
  char buf[64];
  auto num = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out += buf;
  };
  auto opt = [&](const std::optional<double>& v) {
    out += ',';
    if (v) num(*v);
  };
  for (const SweepRow& r : s.rows) {
    num(r.offset);
    out += ',';
    num(r.delta_E);
    out += ',';
    num(r.delta_V);
    opt(r.bound_A_E);
    opt(r.bound_B_E);
    opt(r.bound_C_E);
    opt(r.bound_D_E);
    opt(r.bound_A_V);
    opt(r.bound_B_V);
    opt(r.bound_C_V);
    out += '\n';
  }
  return out;
}

SlopeFit convergence_slope(const DensityModel& model, Scheme scheme, SlopeQuantity quantity,
                           std::span<const double> deltas, int probe_offsets) {
  if (deltas.size() < 4) throw Error(ErrorCode::InvalidArgument, "slope fit needs at least 4 delta values");
  if (probe_offsets < 1) throw Error(ErrorCode::InvalidArgument, "probe_offsets must be >= 1");
  const Support s = model->effective_support();
  OracleOptions o;
  o.breaks = model->breakpoints();
  auto f = [&](double x) { return model->density(x); };

  SlopeFit fit;
  for (double d : deltas) {
    if (!(d > 0.0)) throw Error(ErrorCode::InvalidArgument, "deltas must be positive");
    double worst = 0.0;
    for (int j = 0; j < probe_offsets; ++j) {
      const Grid grid = Grid::uniform(d, 2.0 * d * j / probe_offsets);
      double q = 0.0;
      switch (quantity) {
        case SlopeQuantity::DeltaE:
          q = err_weighted_integral(grid, scheme, f, s.lo, s.hi, 1, true, o).value;
          break;
        case SlopeQuantity::AbsErrMean:
          q = err_weighted_integral(grid, scheme, f, s.lo, s.hi, 1, false, o).value;
          break;
        case SlopeQuantity::DeltaV:
          q = rounded_deltas(model, grid, scheme).delta_V;
          break;
      }
      worst = std::max(worst, std::fabs(q));
    }
    fit.deltas.push_back(d);
    fit.values.push_back(worst);
    fit.used.push_back(worst >= 1e-15);
    if (worst < 1e-15) ++fit.excluded;
  }

  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (std::size_t i = 0; i < fit.deltas.size(); ++i) {
    if (!fit.used[i]) continue;
    const double x = std::log(fit.deltas[i]), y = std::log(fit.values[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++n;
  }
  if (n < 2 || !(n * sxx - sx * sx > 0.0))
    throw Error(ErrorCode::DegenerateFit,
                std::to_string(fit.excluded) + " of " + std::to_string(fit.deltas.size()) + " points below 1e-15");
  fit.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  fit.intercept = (sy - fit.slope * sx) / n;
  return fit;
}

SumSimulation simulated_sum(std::span<const DensityModel> models, const FloatSystem& fs, Scheme scheme,
                            std::uint64_t n_samples, std::uint64_t seed) {
  if (n_samples < 1) throw Error(ErrorCode::InvalidArgument, "n_samples must be positive");
  const Grid grid = Grid::floating(fs.mantissa_bits, fs.k_min, fs.k_max, fs.subnormals);
  const GapStats gs = grid.gap_stats(std::ldexp(1.0, fs.k_min), std::ldexp(1.0, fs.k_max));
  SumSimulation out;
  out.eps = scheme_eps_delta(scheme, gs.eps0, gs.delta0).eps;
  std::vector<double> abs_means;
  for (const DensityModel& m : models) abs_means.push_back(m->abs_moment(1));
  out.bound = rounded_sum_bound(abs_means, out.eps);

  const std::size_t n = models.size();
  std::vector<double> diffs(n_samples, 0.0);
  for (std::uint64_t s = 0; s < n_samples && n > 0; ++s) {
    double exact = 0.0, approx = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      const double x = models[k]->quantile(counter_uniform_open(seed, k, s));
      exact += x;
      if (k == 0) {
        approx = x;
        continue;
      }
      const Rounded r = round_value(grid, scheme, approx + x, counter_uniform(seed, n + k, s));
      approx = r.value;
      out.overflow_events += r.saturated ? 1 : 0;
    }
    diffs[s] = std::fabs(exact - approx);
  }
  out.estimate = mc_result(diffs, seed);
  return out;
}

}  // namespace rbound
