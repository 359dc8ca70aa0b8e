#include "rbound/distributions.hpp"

#include <algorithm>
#include <boost/math/special_functions/erf.hpp>
#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "rbound/error.hpp"
#include "rbound/quadrature.hpp"

namespace rbound {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPi = std::numbers::pi;

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

// Solve cdf(x) = p on [lo, hi] where cdf is continuous and non-decreasing.
double invert_cdf(const Distribution& d, double p, double lo, double hi) {
  auto g = [&](double x) { return d.cdf(x) - p; };
  if (g(lo) >= 0.0) return lo;
  if (g(hi) <= 0.0) return hi;
  std::uintmax_t iters = 200;
  const auto r = boost::math::tools::toms748_solve(g, lo, hi, boost::math::tools::eps_tolerance<double>(50), iters);
  return 0.5 * (r.first + r.second);
}

void check_k(int k) {
  if (k < 0) throw Error(ErrorCode::InvalidArgument, "moment order must be nonnegative");
}

class Semicircle final : public Distribution {
 public:
  Semicircle(double r, double mu) : r_(r), mu_(mu) {}

  std::string_view kind() const override { return "semicircle"; }
  double density(double x) const override {
    const double t = x - mu_;
    if (t <= -r_ || t >= r_) return 0.0;
    return 2.0 / (kPi * r_ * r_) * std::sqrt((r_ - t) * (r_ + t));
  }
  double cdf(double x) const override {
    const double s = std::clamp((x - mu_) / r_, -1.0, 1.0);
    return std::clamp(0.5 + (s * std::sqrt(1.0 - s * s) + std::asin(s)) / kPi, 0.0, 1.0);
  }
  double quantile(double p) const override {
    if (p <= 0.0) return mu_ - r_;
    if (p >= 1.0) return mu_ + r_;
    return invert_cdf(*this, p, mu_ - r_, mu_ + r_);
  }
  Support support() const override { return {mu_ - r_, mu_ + r_}; }
  double mode() const override { return mu_; }
  double mean() const override { return mu_; }

  double central_moment(int k) const override {
    check_k(k);
    if (k % 2 == 1) return 0.0;
    // (r/2)^{2j} * Catalan(j)
    const int j = k / 2;
    return ipow(r_ / 2.0, k) * binomial(2 * j, j) / (j + 1);
  }
  double raw_moment(int k) const override {
    check_k(k);
    double s = 0.0;
    for (int j = 0; j <= k; ++j) s += binomial(k, j) * ipow(mu_, k - j) * central_moment(j);
    return s;
  }
  double abs_moment_about(double mu0, int m) const override {
    check_k(m);
    if (mu0 != mu_) return Distribution::abs_moment_about(mu0, m);
    // (2 r^m / pi) B((m+1)/2, 3/2)
    const double a = 0.5 * (m + 1);
    return 2.0 * std::pow(r_, m) / kPi * std::tgamma(a) * std::tgamma(1.5) / std::tgamma(a + 1.5);
  }
  std::vector<double> breakpoints() const override { return {mu_ - r_, mu_, mu_ + r_}; }
  Support effective_support() const override { return support(); }

 private:
  double r_, mu_;
};

class Normal final : public Distribution {
 public:
  Normal(double mu, double sigma2) : mu_(mu), sigma_(std::sqrt(sigma2)) {}

  std::string_view kind() const override { return "normal"; }
  double density(double x) const override {
    const double z = (x - mu_) / sigma_;
    return std::exp(-0.5 * z * z) / (sigma_ * std::sqrt(2.0 * kPi));
  }
  double cdf(double x) const override { return 0.5 * std::erfc(-(x - mu_) / (sigma_ * std::numbers::sqrt2)); }
  double quantile(double p) const override {
    if (p <= 0.0) return -kInf;
    if (p >= 1.0) return kInf;
    return mu_ - sigma_ * std::numbers::sqrt2 * boost::math::erfc_inv(2.0 * p);
  }
  Support support() const override { return {-kInf, kInf}; }
  double mode() const override { return mu_; }
  double mean() const override { return mu_; }

  double central_moment(int k) const override {
    check_k(k);
    if (k % 2 == 1) return 0.0;
    double df = 1.0;  // (k-1)!!
    for (int i = k - 1; i > 1; i -= 2) df *= i;
    return ipow(sigma_, k) * df;
  }
  double raw_moment(int k) const override {
    check_k(k);
    double s = 0.0;
    for (int j = 0; j <= k; ++j) s += binomial(k, j) * ipow(mu_, k - j) * central_moment(j);
    return s;
  }
  double abs_moment_about(double mu0, int m) const override {
    check_k(m);
    if (mu0 != mu_) return Distribution::abs_moment_about(mu0, m);
    return std::pow(sigma_, m) * std::pow(2.0, 0.5 * m) * std::tgamma(0.5 * (m + 1)) / std::sqrt(kPi);
  }
  std::vector<double> breakpoints() const override { return {mu_}; }
  Support effective_support() const override { return {mu_ - 14.0 * sigma_, mu_ + 14.0 * sigma_}; }

 private:
  double mu_, sigma_;
};

class Exponential final : public Distribution {
 public:
  explicit Exponential(double lambda) : lambda_(lambda) {}

  std::string_view kind() const override { return "exponential"; }
  double density(double x) const override { return x < 0.0 ? 0.0 : lambda_ * std::exp(-lambda_ * x); }
  double cdf(double x) const override { return x <= 0.0 ? 0.0 : -std::expm1(-lambda_ * x); }
  double quantile(double p) const override {
    if (p <= 0.0) return 0.0;
    if (p >= 1.0) return kInf;
    return -std::log1p(-p) / lambda_;
  }
  Support support() const override { return {0.0, kInf}; }
  double mode() const override { return 0.0; }
  double mean() const override { return 1.0 / lambda_; }

  double raw_moment(int k) const override {
    check_k(k);
    double f = 1.0;
    for (int i = 2; i <= k; ++i) f *= i;
    return f / ipow(lambda_, k);
  }
  double central_moment(int k) const override {
    check_k(k);
    // subfactorial !k / lambda^k
    double prev2 = 1.0, prev1 = 0.0;  // !0, !1
    if (k == 0) return 1.0;
    for (int n = 2; n <= k; ++n) {
      const double cur = (n - 1) * (prev1 + prev2);
      prev2 = prev1;
      prev1 = cur;
    }
    return prev1 / ipow(lambda_, k);
  }
  std::vector<double> breakpoints() const override { return {0.0}; }
  Support effective_support() const override { return {0.0, 50.0 / lambda_}; }

 private:
  double lambda_;
};

class Uniform final : public Distribution {
 public:
  Uniform(double lo, double hi) : lo_(lo), hi_(hi) {}

  std::string_view kind() const override { return "uniform"; }
  double density(double x) const override { return (x < lo_ || x > hi_) ? 0.0 : 1.0 / (hi_ - lo_); }
  double cdf(double x) const override { return std::clamp((x - lo_) / (hi_ - lo_), 0.0, 1.0); }
  double quantile(double p) const override { return lo_ + std::clamp(p, 0.0, 1.0) * (hi_ - lo_); }
  Support support() const override { return {lo_, hi_}; }
  double mode() const override { return 0.5 * (lo_ + hi_); }
  double mean() const override { return 0.5 * (lo_ + hi_); }

  double raw_moment(int k) const override {
    check_k(k);
    return (ipow(hi_, k + 1) - ipow(lo_, k + 1)) / ((k + 1) * (hi_ - lo_));
  }
  double central_moment(int k) const override {
    check_k(k);
    if (k % 2 == 1) return 0.0;
    return ipow(0.5 * (hi_ - lo_), k) / (k + 1);
  }
  double abs_moment_about(double mu0, int m) const override {
    check_k(m);
    if (mu0 != mean()) return Distribution::abs_moment_about(mu0, m);
    return ipow(0.5 * (hi_ - lo_), m) / (m + 1);
  }
  std::vector<double> breakpoints() const override { return {lo_, hi_}; }
  Support effective_support() const override { return support(); }

 private:
  double lo_, hi_;
};

class Custom final : public Distribution {
 public:
  Custom(std::string name, std::function<double(double)> f, Support s, double mode)
      : name_(std::move(name)), f_(std::move(f)), support_(s), mode_(mode) {
    window_ = find_window();
    mean_ = expect([](double x) { return x; });
  }

  std::string_view kind() const override { return name_; }
  double density(double x) const override {
    if (x < support_.lo || x > support_.hi) return 0.0;
    return f_(x);
  }
  double cdf(double x) const override {
    if (x <= support_.lo) return 0.0;
    if (x >= support_.hi) return 1.0;
    const double lo = std::isinf(support_.lo) ? -kInf : support_.lo;
    const double brk[] = {mode_};
    return std::clamp(integrate([this](double t) { return density(t); }, lo, x, brk).value, 0.0, 1.0);
  }
  double quantile(double p) const override {
    if (p <= 0.0) return support_.lo;
    if (p >= 1.0) return support_.hi;
    return invert_cdf(*this, p, window_.lo, window_.hi);
  }
  Support support() const override { return support_; }
  double mode() const override { return mode_; }
  double mean() const override { return mean_; }
  std::vector<double> breakpoints() const override {
    std::vector<double> b{mode_};
    if (std::isfinite(support_.lo)) b.push_back(support_.lo);
    if (std::isfinite(support_.hi)) b.push_back(support_.hi);
    return b;
  }
  Support effective_support() const override { return window_; }

 private:
  Support find_window() const {
    Support w = support_;
    // Expand from the mode until the density is negligible against the peak.
    const double peak = density(mode_);
    double step = 1.0;
    if (std::isinf(w.lo)) {
      w.lo = mode_ - step;
      while (density(w.lo) > 1e-300 + 1e-18 * peak && w.lo > -1e300) w.lo = mode_ - (step *= 2.0);
    }
    step = 1.0;
    if (std::isinf(w.hi)) {
      w.hi = mode_ + step;
      while (density(w.hi) > 1e-300 + 1e-18 * peak && w.hi < 1e300) w.hi = mode_ + (step *= 2.0);
    }
    return w;
  }

  std::string name_;
  std::function<double(double)> f_;
  Support support_;
  double mode_;
  Support window_{};
  double mean_ = 0.0;
};

}  // namespace

double Distribution::expect(const std::function<double(double)>& w, std::initializer_list<double> breaks) const {
  const Support s = support();
  std::vector<double> pts = breakpoints();
  pts.push_back(mode());
  pts.insert(pts.end(), breaks.begin(), breaks.end());
  auto integrand = [&](double x) {
    const double fx = density(x);
    return fx == 0.0 ? 0.0 : w(x) * fx;
  };
  return integrate(integrand, s.lo, s.hi, pts).value;
}

std::vector<double> Distribution::breakpoints() const { return {mode()}; }

Support Distribution::effective_support() const { return support(); }

double Distribution::raw_moment(int k) const {
  check_k(k);
  return expect([k](double x) { return ipow(x, k); }, {0.0});
}

double Distribution::central_moment(int k) const {
  check_k(k);
  const double mu = mean();
  return expect([k, mu](double x) { return ipow(x - mu, k); }, {mu});
}

double Distribution::abs_moment_about(double mu0, int m) const {
  check_k(m);
  return expect([m, mu0](double x) { return ipow(std::fabs(x - mu0), m); }, {mu0});
}

double Distribution::mixed_abs_moment(double mu0, int m, int n) const {
  check_k(m);
  check_k(n);
  if (n == 0) return abs_moment_about(mu0, m);
  return expect([m, n, mu0](double x) { return ipow(std::fabs(x - mu0), m) * ipow(std::fabs(x), n); }, {mu0, 0.0});
}

DensityModel make_semicircle(double r, double mu) {
  if (!(r > 0.0) || !std::isfinite(r) || !std::isfinite(mu))
    throw Error(ErrorCode::InvalidArgument, "semicircle needs r > 0 and finite mu");
  return DensityModel(std::make_shared<Semicircle>(r, mu));
}

DensityModel make_normal(double mu, double sigma2) {
  if (!(sigma2 > 0.0) || !std::isfinite(sigma2) || !std::isfinite(mu))
    throw Error(ErrorCode::InvalidArgument, "normal needs sigma2 > 0 and finite mu");
  return DensityModel(std::make_shared<Normal>(mu, sigma2));
}

DensityModel make_exponential(double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw Error(ErrorCode::InvalidArgument, "exponential needs lambda > 0");
  return DensityModel(std::make_shared<Exponential>(lambda));
}

DensityModel make_uniform(double lo, double hi) {
  if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi))
    throw Error(ErrorCode::InvalidArgument, "uniform needs finite lo < hi");
  return DensityModel(std::make_shared<Uniform>(lo, hi));
}

DensityModel make_custom(std::string name, std::function<double(double)> density, Support support, double mode) {
  if (!(support.lo < support.hi)) throw Error(ErrorCode::InvalidArgument, "custom density needs lo < hi");
  if (mode < support.lo || mode > support.hi) throw Error(ErrorCode::InvalidArgument, "mode must lie in the support");
  DensityModel model(std::make_shared<Custom>(std::move(name), std::move(density), support, mode));
  const double mass = model->expect([](double) { return 1.0; });
  if (std::fabs(mass - 1.0) > 1e-10)
    throw Error(ErrorCode::InvalidArgument, "custom density integrates to " + std::to_string(mass) + ", not 1");
  check_unimodal(model);
  return model;
}

// --- envelope ---------------------------------------------------------------

void check_unimodal(const DensityModel& model) {
  const Support w = model->effective_support();
  const double x_star = model->mode();
  const double peak = model->peak();
  const double tol = 1e-12 * std::max(peak, 1e-300);
  constexpr int kProbe = 21;
  auto probe = [&](double a, double b, bool rising) {
    if (!(a < b)) return;
    double prev = model->density(a);
    for (int i = 1; i < kProbe; ++i) {
      const double x = i + 1 == kProbe ? b : a + (b - a) * i / (kProbe - 1);
      const double y = model->density(x);
      if (rising ? y < prev - tol : y > prev + tol)
        throw Error(ErrorCode::NotUnimodal, std::string(model->kind()) + " density is not monotone on the " +
                                                (rising ? "left" : "right") + " of the declared mode");
      prev = y;
    }
  };
  probe(w.lo, x_star, true);
  probe(x_star, w.hi, false);
}

Envelope envelope(const DensityModel& model) {
  check_unimodal(model);
  return Envelope(model);
}

Envelope::Envelope(DensityModel model)
    : model_(std::move(model)), mode_abs_(std::fabs(model_->mode())), peak_(model_->peak()) {}

double Envelope::f_hat(double x) const {
  if (x < 0.0) throw Error(ErrorCode::InvalidArgument, "f_hat is defined for x >= 0");
  if (x < mode_abs_) return peak_;
  return std::max(model_->density(x), model_->density(-x));
}

double Envelope::f_hat_inv(double u) const {
  if (u >= peak_) return 0.0;
  const Support s = model_->support();
  if (u <= 0.0) return std::max(std::fabs(s.lo), std::fabs(s.hi));
  const double x_star = model_->mode();
  // Right: largest x >= x* with f(x) > u; f is non-increasing there.
  auto edge = [&](double inside, double outside) {
    if (model_->density(outside) > u) return outside;
    for (int i = 0; i < 200 && inside != outside; ++i) {
      const double mid = 0.5 * (inside + outside);
      if (mid == inside || mid == outside) break;
      (model_->density(mid) > u ? inside : outside) = mid;
    }
    return inside;
  };
  auto far = [&](double limit, double dir) {
    if (std::isfinite(limit)) return limit;
    double step = 1.0;
    while (model_->density(x_star + dir * step) > u) step *= 2.0;
    return x_star + dir * step;
  };
  const double right = edge(x_star, far(s.hi, 1.0));
  const double left = edge(x_star, far(s.lo, -1.0));
  return std::max(std::fabs(right), std::fabs(left));
}

double Envelope::weighted_integral(int k) const {
  if (k < 0) throw Error(ErrorCode::InvalidArgument, "weighted_integral needs k >= 0");
  const double core = peak_ * std::pow(mode_abs_, k + 1) / (k + 1);
  const Support s = model_->support();
  const double reach = std::max(std::fabs(s.lo), std::fabs(s.hi));
  if (!(reach > mode_abs_)) return core;
  std::vector<double> brk{std::fabs(s.lo), std::fabs(s.hi)};
  for (double b : model_->breakpoints()) brk.push_back(std::fabs(b));
  auto integrand = [&](double x) {
    const double f = std::max(model_->density(x), model_->density(-x));
    return f == 0.0 ? 0.0 : std::pow(x, k) * f;
  };
  return core + integrate(integrand, mode_abs_, reach, brk).value;
}

double SymmetricSplit::g(double x) const { return std::min(model_->density(2.0 * center_ - x), model_->density(x)); }

double SymmetricSplit::h(double x) const { return std::max(model_->density(x) - g(x), 0.0); }

}  // namespace rbound
