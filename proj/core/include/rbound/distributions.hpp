#pragma once

#include <functional>
#include <initializer_list>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace rbound {

struct Support {
  double lo = 0.0;
  double hi = 0.0;  // either end may be infinite
};

/// Continuous unimodal distribution. Implementations give analytic moments
/// where known; the base class falls back to adaptive quadrature.
class Distribution {
 public:
  virtual ~Distribution() = default;

  virtual std::string_view kind() const = 0;
  virtual double density(double x) const = 0;
  virtual double cdf(double x) const = 0;
  virtual double quantile(double p) const = 0;
  virtual Support support() const = 0;
  /// f is non-decreasing left of the mode and non-increasing right of it.
  virtual double mode() const = 0;
  virtual double mean() const = 0;

  double peak() const { return density(mode()); }

  virtual double raw_moment(int k) const;
  virtual double central_moment(int k) const;
  /// E|X - mu0|^m.
  virtual double abs_moment_about(double mu0, int m) const;
  /// E[|X - mu0|^m |X|^n].
  virtual double mixed_abs_moment(double mu0, int m, int n) const;
  /// E|X|^n.
  double abs_moment(int n) const { return mixed_abs_moment(0.0, 0, n); }

  /// int_lo^hi w(x) f(x) dx over the support, split at the mode, support
  /// edges and the given extra breakpoints.
  double expect(const std::function<double(double)>& w, std::initializer_list<double> breaks = {}) const;

  /// Points where the density or its derivative may be non-smooth.
  virtual std::vector<double> breakpoints() const;

  /// A finite window holding all but a negligible tail of the mass.
  virtual Support effective_support() const;
};

/// Immutable shared handle to a distribution.
class DensityModel {
 public:
  DensityModel() = default;
  explicit DensityModel(std::shared_ptr<const Distribution> impl) : impl_(std::move(impl)) {}

  const Distribution* operator->() const noexcept { return impl_.get(); }
  const Distribution& operator*() const noexcept { return *impl_; }
  explicit operator bool() const noexcept { return static_cast<bool>(impl_); }
  double operator()(double x) const { return impl_->density(x); }

 private:
  std::shared_ptr<const Distribution> impl_;
};

DensityModel make_semicircle(double r, double mu = 0.0);
DensityModel make_normal(double mu, double sigma2);
DensityModel make_exponential(double lambda);
DensityModel make_uniform(double lo, double hi);

/// User-supplied density with declared mode and support. Moments, cdf and
/// quantile come from quadrature. Throws NotUnimodal if the declared mode
/// fails the monotonicity probe, InvalidArgument if f does not integrate to 1.
DensityModel make_custom(std::string name, std::function<double(double)> density, Support support, double mode);

/// Radially non-increasing majorant f_hat(x) = sup_{|z| > x} f(z), x >= 0.
class Envelope {
 public:
  explicit Envelope(DensityModel model);

  double f_hat(double x) const;
  /// sup{ |x| : f(x) > u } for 0 < u; 0 when u >= f(x*).
  double f_hat_inv(double u) const;
  /// int_0^inf x^k f_hat(x) dx.
  double weighted_integral(int k) const;
  double peak() const { return peak_; }

 private:
  DensityModel model_;
  double mode_abs_;
  double peak_;
};

/// Throws NotUnimodal when the declared mode fails a 21-point monotonicity
/// probe on either side.
Envelope envelope(const DensityModel& model);
void check_unimodal(const DensityModel& model);

/// f = g + h with g(x) = min{f(2c - x), f(x)} even about c.
class SymmetricSplit {
 public:
  SymmetricSplit(DensityModel model, double center) : model_(std::move(model)), center_(center) {}

  double center() const noexcept { return center_; }
  double g(double x) const;
  double h(double x) const;

 private:
  DensityModel model_;
  double center_;
};

inline SymmetricSplit symmetric_split(const DensityModel& model, double center) { return {model, center}; }

}  // namespace rbound
