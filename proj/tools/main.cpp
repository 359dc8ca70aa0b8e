// rbound: bounds on the moment shift caused by rounding a random variable.
//
// Exit codes: 0 success, 1 a bound was violated (verify, sweep), 2 bad
// configuration or arguments, 3 a theorem hypothesis does not hold.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>

#include "rbound/bounds.hpp"
#include "rbound/config.hpp"
#include "rbound/error.hpp"
#include "rbound/oracle.hpp"
#include "rbound/verify.hpp"
#include "svg.hpp"

using json = nlohmann::json;
using namespace rbound;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Global {
  std::string config_path;
  std::string out_path;
  std::string format;
  std::optional<std::uint64_t> seed;
  json cfg = json::object();
};

struct BoundArgs {
  std::optional<std::string> dist, grid, scheme, tier, quantity;
  std::optional<double> delta, eps, offset, a, b, mu0;
  std::optional<int> k, m;
  bool signed_variant = false, on_grid = false, symmetric = false;
  bool plan = false;
  std::optional<double> variance, c, p, t;
  std::optional<long long> n;
};

struct VerifyArgs {
  std::optional<int> instances;
  std::optional<std::string> scheme;
  bool self_test = false;
};

struct SweepArgs {
  std::optional<std::string> dist, grid, scheme;
  std::optional<double> delta;
  std::optional<int> offsets;
};

struct SumArgs {
  std::optional<std::string> dist, grid, scheme;
  std::optional<int> terms;
  std::optional<long long> samples;
};

[[noreturn]] void config_fail(const std::string& msg) { throw Error(ErrorCode::ConfigError, msg); }

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void load_config(Global& g) {
  if (g.config_path.empty()) return;
  std::ifstream in(g.config_path);
  if (!in) config_fail("cannot open config file '" + g.config_path + "'");
  try {
    g.cfg = json::parse(in);
  } catch (const json::exception& e) {
    config_fail(std::string("config file is not valid JSON: ") + e.what());
  }
  if (!g.cfg.is_object()) config_fail("config file must hold a JSON object");
  static const char* known[] = {"grid",   "distribution", "scheme", "delta", "eps",       "k",       "m",
                                "tier",   "quantity",     "seed",   "offset", "offsets",  "instances",
                                "terms",  "samples",      "variance", "c",   "p",         "n",       "t",  "mu0"};
  for (const auto& [key, _] : g.cfg.items()) {
    if (std::find(std::begin(known), std::end(known), key) == std::end(known))
      config_fail("unknown config key '" + key + "'");
  }
}

template <typename T>
std::optional<T> from_cfg(const Global& g, const char* key) {
  if (!g.cfg.contains(key)) return std::nullopt;
  try {
    return g.cfg[key].get<T>();
  } catch (const json::exception&) {
    config_fail(std::string("config key '") + key + "' has the wrong type");
  }
}

template <typename T>
std::optional<T> pick(const std::optional<T>& flag, const Global& g, const char* key) {
  return flag ? flag : from_cfg<T>(g, key);
}

DensityModel model_from(const std::optional<std::string>& flag, const Global& g, const char* fallback) {
  if (flag) return parse_distribution_spec(*flag);
  if (g.cfg.contains("distribution")) return parse_distribution_json(g.cfg["distribution"].dump());
  return parse_distribution_spec(fallback);
}

std::optional<Grid> grid_from(const std::optional<std::string>& flag, const Global& g) {
  if (flag) return parse_grid_spec(*flag);
  if (g.cfg.contains("grid")) return parse_grid_json(g.cfg["grid"].dump());
  return std::nullopt;
}

Scheme scheme_from(const std::optional<std::string>& flag, const Global& g) {
  const auto s = pick(flag, g, "scheme");
  if (!s) return Scheme::ToNearest;
  try {
    return parse_scheme(*s);
  } catch (const Error& e) {
    config_fail(e.what());
  }
}

std::string format_of(const Global& g, std::string fallback, std::initializer_list<const char*> allowed) {
  const std::string f = g.format.empty() ? fallback : g.format;
  for (const char* a : allowed)
    if (f == a) return f;
  config_fail("format '" + f + "' is not available for this command");
}

void emit(const Global& g, const std::string& text) {
  if (g.out_path.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream out(g.out_path);
  if (!out) config_fail("cannot write '" + g.out_path + "'");
  out << text;
  if (!text.empty() && text.back() != '\n') out << '\n';
}

// --- bound --------------------------------------------------------------

json plan_json(double V, double c, double p, std::optional<long long> n, std::optional<double> delta,
               std::optional<double> t) {
  const MeasurementPlan plan = plan_measurement(V, c, p, n);
  json j = {{"n_min", plan.n_min}, {"n", plan.n}, {"delta_max", plan.delta_max}};
  if (delta && t) j["chebyshev_bound"] = rounded_chebyshev(V, static_cast<double>(plan.n), *delta, *t);
  return j;
}

std::string plan_output(const Global& g, const json& j) {
  if (format_of(g, "json", {"json", "csv"}) == "json") return j.dump(2);
  std::string out = "n_min,n,delta_max\n" + std::to_string(j["n_min"].get<long long>()) + "," +
                    std::to_string(j["n"].get<long long>()) + "," + fmt17(j["delta_max"].get<double>()) + "\n";
  return out;
}

json plan_from_args(const Global& g, const std::optional<double>& variance, const std::optional<double>& c,
                    const std::optional<double>& p, const std::optional<long long>& n,
                    const std::optional<double>& delta, const std::optional<double>& t) {
  const auto V = pick(variance, g, "variance"), cc = pick(c, g, "c"), pp = pick(p, g, "p");
  if (!V || !cc || !pp) config_fail("planning needs --variance, --c and --p");
  if (!(*V > 0) || !(*cc > 0) || !(*pp > 0 && *pp < 1))
    config_fail("planning needs variance > 0, c > 0 and 0 < p < 1");
  return plan_json(*V, *cc, *pp, pick(n, g, "n"), pick(delta, g, "delta"), pick(t, g, "t"));
}

std::string report_csv(const BoundReport& r) {
  std::string out = "theorem,value,leading_coef,leading_power,leading_base,higher_coef,higher_power,higher_base,mode,tier\n";
  out += r.theorem + "," + fmt17(r.value) + "," + fmt17(r.leading.coef) + "," + std::to_string(r.leading.power) +
         "," + r.leading.base + "," + fmt17(r.higher_order.coef) + "," + std::to_string(r.higher_order.power) + "," +
         r.higher_order.base + "," + std::string(mode_name(r.mode)) + "," +
         (r.tier ? std::string(tier_name(*r.tier)) : std::string()) + "\n";
  return out;
}

int cmd_bound(const Global& g, const BoundArgs& a) {
  if (a.plan) {
    emit(g, plan_output(g, plan_from_args(g, a.variance, a.c, a.p, a.n, a.delta, a.t)));
    return 0;
  }
  const std::string fmt = format_of(g, "json", {"json", "csv"});
  const DensityModel model = model_from(a.dist, g, "semicircle:r=1,mu=0");
  const std::optional<Grid> grid = grid_from(a.grid, g);
  const Scheme scheme = scheme_from(a.scheme, g);
  const std::string quantity = pick(a.quantity, g, "quantity").value_or("mean");
  const int k = pick(a.k, g, "k").value_or(quantity == "centered" ? 2 : 1);
  const int m = pick(a.m, g, "m").value_or(0);
  const auto delta = pick(a.delta, g, "delta");
  const auto eps = pick(a.eps, g, "eps");
  if (delta && eps) config_fail("give either --delta or --eps, not both");
  if ((delta && *delta < 0) || (eps && *eps < 0)) config_fail("--delta and --eps must be nonnegative");

  auto precision = [&]() -> Precision {
    if (eps) return Precision::eps(*eps);
    if (delta) return Precision::delta(*delta);
    if (grid) {
      const Support s = model->effective_support();
      const GapStats gs = grid->gap_stats(s.lo, s.hi);
      return Precision::delta(scheme_eps_delta(scheme, gs.eps0, gs.delta0).delta);
    }
    config_fail("quantity '" + quantity + "' needs --delta, --eps or a grid");
  };

  std::optional<FloatMomentBound> fb;
  BoundReport r;
  if (quantity == "mean" || quantity == "variance") {
    const Tier tier = parse_tier(pick(a.tier, g, "tier").value_or("A"));
    TierContext ctx{scheme, 0.0, pick(a.offset, g, "offset")};
    const bool mesh = grid && grid->is_uniform();
    if (delta) {
      ctx.delta = *delta;
    } else if (mesh) {
      const double hg = grid->mesh().half_gap;
      ctx.delta = tier >= Tier::C ? hg : scheme_eps_delta(scheme, kInf, 2 * hg).delta;
    } else {
      config_fail("tier bounds need --delta or a uniform grid");
    }
    if (tier == Tier::D && !ctx.offset && mesh) ctx.offset = grid->mesh().offset;
    const MeanVarianceBounds mv = mean_and_variance_diff_bounds(model, tier, ctx);
    r = quantity == "mean" ? mv.mean : mv.variance;
  } else if (quantity == "strong") {
    r = strong_bound(model, k, precision());
  } else if (quantity == "mixed") {
    std::optional<SymmetryContext> sym;
    if (a.symmetric) sym = SymmetryContext{scheme, grid ? grid->sign_symmetric() : true};
    r = mixed_moment_bound(model, pick(a.mu0, g, "mu0").value_or(a.symmetric ? 0.0 : model->mean()), m, k,
                           precision(), sym);
  } else if (quantity == "centered") {
    r = centered_moment_first_order(model, k, precision());
  } else if (quantity == "unimodal") {
    r = unimodal_moment_bound(model, k, scheme, precision(), a.signed_variant);
  } else if (quantity == "interval") {
    if (!a.a || !a.b) config_fail("interval bounds need --a and --b");
    r = interval_error_bound(*a.a, *a.b, k, scheme, precision(), a.on_grid, a.signed_variant);
  } else if (quantity == "sheppard") {
    if (!delta) config_fail("sheppard needs --delta (the mesh half-gap)");
    r = a.a && a.b ? sheppard_two_sided_interval(*a.a, *a.b, k, *delta) : sheppard_two_sided(model, k, *delta);
  } else if (quantity == "float") {
    if (!grid || !grid->is_float()) config_fail("quantity 'float' needs a float grid");
    fb = float_moment_bound(model, grid->float_system(), k, scheme, a.signed_variant);
    r = fb->report;
  } else if (quantity == "normal-partial") {
    if (model->kind() != "normal") config_fail("quantity 'normal-partial' needs a normal distribution");
    if (!eps) config_fail("normal-partial needs --eps");
    r = normal_partial_moment_bound(model->mean(), model->central_moment(2), m, k, *eps);
  } else {
    config_fail("unknown quantity '" + quantity + "'");
  }

  if (fmt == "csv") {
    emit(g, report_csv(r));
    return 0;
  }
  if (!fb) {
    emit(g, report_to_json(r, 2));
    return 0;
  }
  json j = json::parse(report_to_json(r));
  j["remainder"] = fb->remainder;
  j["total"] = fb->total;
  j["eps"] = fb->eps;
  j["coefficient"] = fb->coefficient;
  j["tail_negligible"] = fb->tail_negligible;
  emit(g, j.dump(2));
  return 0;
}

// --- verify -------------------------------------------------------------

int cmd_verify(const Global& g, const VerifyArgs& a) {
  VerifyOptions o;
  o.instances = pick(a.instances, g, "instances").value_or(200);
  o.seed = g.seed ? *g.seed : from_cfg<std::uint64_t>(g, "seed").value_or(0);
  if (a.scheme || g.cfg.contains("scheme")) o.scheme = scheme_from(a.scheme, g);
  if (a.self_test) o.bound_scale = 0.5;
  if (o.instances < 1) config_fail("--instances must be positive");

  const VerifyResult r = verify_suite(o);
  const std::string fmt = format_of(g, "text", {"text", "json", "csv"});
  if (fmt == "csv") {
    std::string out = "instance,check,oracle,bound,margin,ok\n";
    for (const VerifyCheck& c : r.checks)
      out += std::to_string(c.instance) + ",\"" + c.label + "\"," + fmt17(c.oracle) + "," + fmt17(c.bound) + "," +
             fmt17(c.margin) + "," + (c.ok ? "1" : "0") + "\n";
    emit(g, out);
  } else if (fmt == "json") {
    json j = {{"instances", r.instances},       {"checks", r.checks.size()}, {"violations", r.violations},
              {"worst_margin", r.worst_margin}, {"worst_check", r.worst_label}, {"seed", o.seed},
              {"bound_scale", o.bound_scale}};
    json bad = json::array();
    for (const VerifyCheck& c : r.checks)
      if (!c.ok) bad.push_back({{"check", c.label}, {"oracle", c.oracle}, {"bound", c.bound}});
    j["failed"] = bad;
    emit(g, j.dump(2));
  } else {
    std::string out;
    for (const VerifyCheck& c : r.checks)
      if (!c.ok) out += "VIOLATION " + c.label + ": oracle " + fmt17(c.oracle) + " > bound " + fmt17(c.bound) + "\n";
    out += (r.violations == 0 ? "PASS " : "FAIL ") + std::to_string(r.instances) + " instances, " +
           std::to_string(r.checks.size()) + " checks, " + std::to_string(r.violations) + " violations\n";
    out += "worst margin " + fmt17(r.worst_margin) + " (" + r.worst_label + ")\n";
    emit(g, out);
  }
  return r.violations == 0 ? 0 : 1;
}

// --- sweep --------------------------------------------------------------

std::string sweep_svg(const SweepResult& s, double delta) {
  auto col = [&](auto get) {
    std::vector<double> v;
    for (const SweepRow& r : s.rows) v.push_back(get(r));
    return v;
  };
  const std::vector<double> x = col([](const SweepRow& r) { return r.offset; });
  auto tier = [&](const char* label, const char* color, std::optional<double> SweepRow::*field) {
    cli::Series ser{label, color, {}, {}, true};
    for (const SweepRow& r : s.rows)
      if (r.*field) {
        ser.x.push_back(r.offset);
        ser.y.push_back(*(r.*field));
      }
    return ser;
  };
  cli::Panel pe{"|E[rd X] - E[X]| against mesh offset (delta = " + fmt17(delta) + ")", "offset a", {}};
  pe.series.push_back({"|dE|", "black", x, col([](const SweepRow& r) { return std::fabs(r.delta_E); })});
  pe.series.push_back(tier("tier A", "#d62728", &SweepRow::bound_A_E));
  pe.series.push_back(tier("tier B", "#1f77b4", &SweepRow::bound_B_E));
  pe.series.push_back(tier("tier C", "#2ca02c", &SweepRow::bound_C_E));
  pe.series.push_back(tier("tier D", "#9467bd", &SweepRow::bound_D_E));
  cli::Panel pv{"|V[rd X] - V[X]| against mesh offset", "offset a", {}};
  pv.series.push_back({"|dV|", "black", x, col([](const SweepRow& r) { return std::fabs(r.delta_V); })});
  pv.series.push_back(tier("tier A", "#d62728", &SweepRow::bound_A_V));
  pv.series.push_back(tier("tier B", "#1f77b4", &SweepRow::bound_B_V));
  pv.series.push_back(tier("tier C", "#2ca02c", &SweepRow::bound_C_V));
  pv.series.push_back(tier("tier D", "#9467bd", &SweepRow::bound_D_V));
  for (cli::Panel* p : {&pe, &pv})
    std::erase_if(p->series, [](const cli::Series& ser) { return ser.x.empty(); });
  return cli::render_svg({pe, pv});
}

int cmd_sweep(const Global& g, const SweepArgs& a) {
  const std::string fmt = format_of(g, "csv", {"csv", "json", "svg"});
  const DensityModel model = model_from(a.dist, g, "semicircle:r=1,mu=0");
  const Scheme scheme = scheme_from(a.scheme, g);
  const std::optional<Grid> grid = grid_from(a.grid, g);
  std::optional<double> delta = pick(a.delta, g, "delta");
  if (grid) {
    if (!grid->is_uniform())
      throw Error(ErrorCode::PreconditionFailed, "the offset sweep requires a uniform mesh grid");
    if (!delta) delta = grid->mesh().half_gap;
  }
  if (!delta) config_fail("sweep needs --delta or a uniform grid");
  const int n = pick(a.offsets, g, "offsets").value_or(64);
  if (n < 2) config_fail("--offsets must be at least 2");

  const SweepResult s = offset_sweep(model, *delta, n, scheme);
  if (fmt == "csv") {
    emit(g, sweep_csv(s));
  } else if (fmt == "svg") {
    emit(g, sweep_svg(s, *delta));
  } else {
    json rows = json::array();
    for (const SweepRow& r : s.rows) {
      json row = {{"offset", r.offset}, {"delta_E", r.delta_E}, {"delta_V", r.delta_V}, {"dominated", r.dominated}};
      auto put = [&](const char* key, const std::optional<double>& v) {
        if (v) row[key] = *v;
      };
      put("bound_A_E", r.bound_A_E);
      put("bound_B_E", r.bound_B_E);
      put("bound_C_E", r.bound_C_E);
      put("bound_D_E", r.bound_D_E);
      put("bound_A_V", r.bound_A_V);
      put("bound_B_V", r.bound_B_V);
      put("bound_C_V", r.bound_C_V);
      put("bound_D_V", r.bound_D_V);
      rows.push_back(row);
    }
    emit(g, json{{"rows", rows}, {"violations", s.violations}, {"worst_margin", s.worst_margin}}.dump(2));
  }
  if (s.violations > 0) std::cerr << "sweep: " << s.violations << " rows exceed a tier bound\n";
  return s.violations == 0 ? 0 : 1;
}

// --- sum-demo -----------------------------------------------------------

int cmd_sum(const Global& g, const SumArgs& a) {
  const std::string fmt = format_of(g, "json", {"json", "csv"});
  const DensityModel model = model_from(a.dist, g, "uniform:lo=0,hi=1");
  const Grid grid = grid_from(a.grid, g).value_or(parse_grid_spec("float:m=8,k_min=-8,k_max=8"));
  if (!grid.is_float()) config_fail("sum-demo needs a float grid");
  const Scheme scheme = scheme_from(a.scheme, g);
  const int terms = pick(a.terms, g, "terms").value_or(10);
  const long long samples = pick(a.samples, g, "samples").value_or(100000);
  const std::uint64_t seed = g.seed ? *g.seed : from_cfg<std::uint64_t>(g, "seed").value_or(0);
  if (terms < 1) config_fail("--terms must be positive");
  if (samples < 1) config_fail("--samples must be positive");

  const std::vector<DensityModel> models(static_cast<std::size_t>(terms), model);
  const SumSimulation s = simulated_sum(models, grid.float_system(), scheme, static_cast<std::uint64_t>(samples), seed);
  if (fmt == "csv") {
    emit(g, "terms,estimate,abs_error_estimate,bound,eps,overflow_events,samples,seed\n" + std::to_string(terms) + "," +
                fmt17(s.estimate.value) + "," + fmt17(s.estimate.abs_error_estimate) + "," + fmt17(s.bound) + "," +
                fmt17(s.eps) + "," + std::to_string(s.overflow_events) + "," + std::to_string(samples) + "," +
                std::to_string(seed) + "\n");
  } else {
    emit(g, json{{"terms", terms},
                 {"estimate", s.estimate.value},
                 {"abs_error_estimate", s.estimate.abs_error_estimate},
                 {"bound", s.bound},
                 {"eps", s.eps},
                 {"overflow_events", s.overflow_events},
                 {"samples", samples},
                 {"seed", seed},
                 {"note", "first-order bound; the O(eps^2) remainder is not included"}}
                .dump(2));
  }
  return 0;
}

int exit_code_for(ErrorCode c) {
  switch (c) {
    case ErrorCode::ConfigError:
    case ErrorCode::InvalidArgument:
      return 2;
    default:
      return 3;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rbound: analytic bounds on moment shifts caused by rounding"};
  app.require_subcommand(1);
  app.fallthrough();

  Global g;
  app.add_option("--config", g.config_path, "JSON config with grid, distribution and command settings");
  app.add_option("--out", g.out_path, "write output here instead of stdout");
  app.add_option("--format", g.format, "csv, json or svg")->check(CLI::IsMember({"csv", "json", "svg"}));
  app.add_option("--seed", g.seed, "random seed (default 0)");

  BoundArgs ba;
  CLI::App* bound = app.add_subcommand("bound", "compute one bound report");
  bound->add_option("--dist", ba.dist, "distribution, e.g. semicircle:r=1,mu=0");
  bound->add_option("--grid", ba.grid, "grid, e.g. uniform:half_gap=0.1 or float:m=8,k_min=-8,k_max=8");
  bound->add_option("--scheme", ba.scheme, "toward_zero, away_from_zero, nearest or stochastic");
  bound->add_option("--quantity", ba.quantity,
                    "mean, variance, strong, mixed, centered, unimodal, interval, sheppard, float, normal-partial");
  bound->add_option("--tier", ba.tier, "assumption tier A-D for mean and variance");
  bound->add_option("--delta", ba.delta, "additive error constant (mesh half-gap for tiers C, D and sheppard)");
  bound->add_option("--eps", ba.eps, "multiplicative error constant");
  bound->add_option("--offset", ba.offset, "mesh offset for tier D");
  bound->add_option("--k", ba.k, "moment order of the error");
  bound->add_option("--m", ba.m, "moment order of (X - mu0) for mixed and normal-partial");
  bound->add_option("--mu0", ba.mu0, "center for mixed moments (default: the mean)");
  bound->add_option("--a", ba.a, "interval start");
  bound->add_option("--b", ba.b, "interval end");
  bound->add_flag("--signed", ba.signed_variant, "bound the signed integral (odd k)");
  bound->add_flag("--on-grid", ba.on_grid, "interval endpoints are grid points");
  bound->add_flag("--symmetric", ba.symmetric, "use the odd-symmetry refinement for mixed moments");
  bound->add_flag("--plan", ba.plan, "plan a measurement campaign instead");
  bound->add_option("--variance", ba.variance, "variance of X for planning");
  bound->add_option("--c", ba.c, "half-width in standard deviations");
  bound->add_option("--p", ba.p, "allowed failure probability");
  bound->add_option("--n", ba.n, "sample count (default: the smallest admissible)");
  bound->add_option("--t", ba.t, "Chebyshev threshold, with --delta");

  BoundArgs pa;
  CLI::App* plan = app.add_subcommand("plan", "sample count and admissible measurement error");
  plan->add_option("--variance", pa.variance, "variance of X");
  plan->add_option("--c", pa.c, "half-width in standard deviations");
  plan->add_option("--p", pa.p, "allowed failure probability");
  plan->add_option("--n", pa.n, "sample count (default: the smallest admissible)");
  plan->add_option("--delta", pa.delta, "measurement error for the Chebyshev bound");
  plan->add_option("--t", pa.t, "Chebyshev threshold");

  VerifyArgs va;
  CLI::App* verify = app.add_subcommand("verify", "randomized dominance suite");
  verify->add_option("--instances", va.instances, "number of random instances (default 200)");
  verify->add_option("--scheme", va.scheme, "restrict to one rounding scheme");
  verify->add_flag("--self-test", va.self_test, "halve every bound; the suite must then fail");

  SweepArgs sa;
  CLI::App* sweep = app.add_subcommand("sweep", "mean and variance shifts over mesh offsets");
  sweep->add_option("--dist", sa.dist, "distribution (default semicircle:r=1,mu=0)");
  sweep->add_option("--grid", sa.grid, "uniform mesh; its half-gap is used when --delta is absent");
  sweep->add_option("--delta", sa.delta, "mesh half-gap");
  sweep->add_option("--offsets", sa.offsets, "number of offsets in [0, 2 delta) (default 64)");
  sweep->add_option("--scheme", sa.scheme, "rounding scheme (default nearest)");

  SumArgs ua;
  CLI::App* sum = app.add_subcommand("sum-demo", "rounded running sum against its first-order bound");
  sum->add_option("--dist", ua.dist, "summand distribution (default uniform:lo=0,hi=1)");
  sum->add_option("--grid", ua.grid, "float grid (default float:m=8,k_min=-8,k_max=8)");
  sum->add_option("--scheme", ua.scheme, "rounding scheme (default nearest)");
  sum->add_option("--terms", ua.terms, "number of summands (default 10)");
  sum->add_option("--samples", ua.samples, "Monte Carlo samples (default 100000)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    load_config(g);
    if (*bound) return cmd_bound(g, ba);
    if (*plan) {
      emit(g, plan_output(g, plan_from_args(g, pa.variance, pa.c, pa.p, pa.n, pa.delta, pa.t)));
      return 0;
    }
    if (*verify) return cmd_verify(g, va);
    if (*sweep) return cmd_sweep(g, sa);
    if (*sum) return cmd_sum(g, ua);
  } catch (const Error& e) {
    std::cerr << "rbound: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "rbound: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
