#include "rbound/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "rbound/bounds.hpp"
#include "rbound/error.hpp"
#include "rbound/oracle.hpp"
#include "rbound/rng.hpp"

namespace rbound {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr Scheme kSchemes[] = {Scheme::TowardZero, Scheme::AwayFromZero, Scheme::ToNearest, Scheme::Stochastic};

template <typename... Args>
std::string fmt(const char* f, Args... args) {
  char buf[96];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

struct Instance {
  DensityModel model;
  std::string model_name;
  Grid grid = Grid::uniform(1.0);
  std::string grid_name;
  std::optional<FloatSystem> fs;
  Scheme scheme = Scheme::ToNearest;
  int k = 1;
  Tier tier = Tier::A;
};

Instance draw(std::uint64_t seed, int i, const std::optional<Scheme>& fixed) {
  std::uint64_t ctr = static_cast<std::uint64_t>(i) << 8;
  auto u = [&] { return counter_uniform(seed, 2, ctr++); };
  Instance in;
  switch (static_cast<int>(4 * u())) {
    case 0: {
      const double r = 0.5 + 1.5 * u(), mu = 2 * u() - 1;
      in.model = make_semicircle(r, mu);
      in.model_name = fmt("semicircle(r=%.4g,mu=%.4g)", r, mu);
      break;
    }
    case 1: {
      const double mu = 2 * u() - 1, s2 = 0.2 + 1.3 * u();
      in.model = make_normal(mu, s2);
      in.model_name = fmt("normal(mu=%.4g,sigma2=%.4g)", mu, s2);
      break;
    }
    case 2: {
      const double lam = 0.5 + 2.5 * u();
      in.model = make_exponential(lam);
      in.model_name = fmt("exponential(lambda=%.4g)", lam);
      break;
    }
    default: {
      const double lo = -u(), hi = lo + 0.3 + 1.7 * u();
      in.model = make_uniform(lo, hi);
      in.model_name = fmt("uniform(lo=%.4g,hi=%.4g)", lo, hi);
      break;
    }
  }
  in.scheme = fixed ? *fixed : kSchemes[static_cast<int>(4 * u())];
  in.k = 1 + static_cast<int>(4 * u());
  in.tier = static_cast<Tier>(static_cast<int>(4 * u()));

  const double sd = std::sqrt(in.model->central_moment(2));
  const Support s = in.model->effective_support();
  const double g = u();
  if (g < 0.7) {
    const double d = (0.02 + 0.23 * u()) * sd, a = 2 * d * u();
    in.grid = Grid::uniform(d, a);
    in.grid_name = fmt("uniform(half_gap=%.4g,offset=%.4g)", d, a);
  } else if (g < 0.9) {
    const double reach = std::max(std::fabs(s.lo), std::fabs(s.hi));
    const int k_max = static_cast<int>(std::ceil(std::log2(reach))) + 1;
    const int m = 3 + static_cast<int>(4 * u());
    in.fs = FloatSystem{m, -6, k_max, u() < 0.8};
    in.grid = Grid::floating(m, -6, k_max, in.fs->subnormals);
    in.grid_name = fmt("float(m=%d,k_max=%d)", m, k_max);
  } else {
    // Irregular explicit set covering the effective support.
    std::vector<double> pts{s.lo - 1.0};
    while (pts.back() < s.hi + 1.0) pts.push_back(pts.back() + (0.02 + 0.3 * u()) * sd);
    in.grid = Grid::explicit_set(pts);
    in.grid_name = fmt("explicit(points=%zu,span=%.4g)", pts.size(), pts.back() - pts.front());
  }
  return in;
}

class Checker {
 public:
  Checker(VerifyResult& res, const VerifyOptions& o, int instance, std::string prefix)
      : res_(res), o_(o), instance_(instance), prefix_(std::move(prefix)) {}

  void upper(const std::string& what, double oracle, double bound) {
    const double b = bound * o_.bound_scale;
    add(what, oracle, b, b - oracle, oracle <= b + 1e-12 + o_.rel_slack * std::fabs(b));
  }

  void two_sided(const std::string& what, double oracle, const TwoSided& ts) {
    const double r = ts.radius * o_.bound_scale;
    const double dev = std::fabs(oracle - ts.center);
    add(what, dev, r, r - dev, dev <= r + 1e-12 + o_.rel_slack * std::fabs(r));
  }

 private:
  void add(const std::string& what, double oracle, double bound, double margin, bool ok) {
    VerifyCheck c{instance_, prefix_ + " " + what, oracle, bound, margin, ok};
    if (!ok) ++res_.violations;
    if (margin < res_.worst_margin) {
      res_.worst_margin = margin;
      res_.worst_label = c.label;
    }
    res_.checks.push_back(std::move(c));
  }

  VerifyResult& res_;
  const VerifyOptions& o_;
  int instance_;
  std::string prefix_;
};

void run_instance(const Instance& in, Checker& chk) {
  const DensityModel& m = in.model;
  const Scheme sc = in.scheme;
  const int k = in.k;
  const Support s = m->effective_support();
  const GapStats gs = in.grid.gap_stats(s.lo, s.hi);
  const EpsDelta ed = scheme_eps_delta(sc, gs.eps0, gs.delta0);
  const bool nearest_like = sc == Scheme::ToNearest || sc == Scheme::Stochastic;
  const std::string ks = "k=" + std::to_string(k);

  OracleOptions o;
  o.breaks = m->breakpoints();
  auto f = [&](double x) { return m->density(x); };
  const double abs_k = err_weighted_integral(in.grid, sc, f, s.lo, s.hi, k, false, o).value;

  chk.upper("strong additive " + ks, abs_k, strong_bound(m, k, Precision::delta(ed.delta)).value);
  if (std::isfinite(ed.eps))
    chk.upper("strong multiplicative " + ks, abs_k, strong_bound(m, k, Precision::eps(ed.eps)).value);

  const double mu = m->mean();
  const int mm = k % 3;
  auto wf = [&](double x) { return std::pow(std::fabs(x - mu), mm) * m->density(x); };
  chk.upper("mixed additive m=" + std::to_string(mm) + " n=" + std::to_string(k),
            err_weighted_integral(in.grid, sc, wf, s.lo, s.hi, k, false, o).value,
            mixed_moment_bound(m, mu, mm, k, Precision::delta(ed.delta)).value);

  chk.upper("unimodal abs " + ks, abs_k, unimodal_moment_bound(m, k, sc, Precision::delta(ed.delta), false).value);
  if (k % 2 == 1 && nearest_like) {
    const double sq = err_weighted_integral(in.grid, sc, f, s.lo, s.hi, k, true, o).value;
    chk.upper("unimodal signed " + ks, std::fabs(sq),
              unimodal_moment_bound(m, k, sc, Precision::delta(ed.delta), true).value);
  }

  // Unweighted interval inside the support.
  const double a = s.lo + 0.25 * (std::min(s.hi, s.lo + 6.0) - s.lo);
  const double b = a + 0.5 * (std::min(s.hi, s.lo + 6.0) - s.lo);
  const GapStats gi = in.grid.gap_stats(a, b);
  const EpsDelta ei = scheme_eps_delta(sc, gi.eps0, gi.delta0);
  auto one = [](double) { return 1.0; };
  chk.upper("interval abs " + ks, err_weighted_integral(in.grid, sc, one, a, b, k, false).value,
            interval_error_bound(a, b, k, sc, Precision::delta(ei.delta), false).value);

  if (in.grid.is_uniform()) {
    const double hg = in.grid.mesh().half_gap;
    Tier t = in.tier;
    if (!nearest_like) t = Tier::A;
    else if (sc == Scheme::Stochastic && t > Tier::B) t = Tier::B;
    const TierContext ctx{sc, t <= Tier::B ? ed.delta : hg,
                          t == Tier::D ? std::optional<double>(in.grid.mesh().offset) : std::nullopt};
    const MeanVarianceBounds mv = mean_and_variance_diff_bounds(m, t, ctx);
    const RoundedDeltas rd = rounded_deltas(m, in.grid, sc);
    const std::string tn = "tier " + std::string(tier_name(t));
    chk.upper(tn + " mean", std::fabs(rd.delta_E), mv.mean.value);
    chk.upper(tn + " variance", std::fabs(rd.delta_V), mv.variance.value);
    chk.upper("centered k=2", std::fabs(rd.delta_V), centered_moment_first_order(m, 2, Precision::delta(ed.delta)).value);
    if (sc == Scheme::ToNearest) {
      const BoundReport sh = sheppard_two_sided(m, k, hg);
      chk.two_sided("sheppard " + ks, abs_k, *sh.two_sided);
    }
  }

  if (in.fs) {
    const bool sgn = k % 2 == 1 && nearest_like;
    const FloatMomentBound fb = float_moment_bound(m, *in.fs, k, sc, sgn);
    const double q = sgn ? std::fabs(err_weighted_integral(in.grid, sc, f, s.lo, s.hi, k, true, o).value) : abs_k;
    chk.upper(std::string("float ") + (sgn ? "signed " : "abs ") + ks, q, fb.total);
  }
}

}  // namespace

VerifyResult verify_suite(const VerifyOptions& opts) {
  if (opts.instances < 1) throw Error(ErrorCode::InvalidArgument, "verify needs at least one instance");
  VerifyResult res;
  res.worst_margin = kInf;
  for (int i = 0; i < opts.instances; ++i) {
    const Instance in = draw(opts.seed, i, opts.scheme);
    Checker chk(res, opts, i,
                "#" + std::to_string(i) + " " + in.model_name + " " + in.grid_name + " " +
                    std::string(scheme_name(in.scheme)));
    run_instance(in, chk);
    ++res.instances;
  }
  return res;
}

}  // namespace rbound
