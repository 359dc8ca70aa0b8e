#include "rbound/quadrature.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <queue>
#include <vector>

#include "rbound/error.hpp"

namespace rbound {

namespace {

using GK15 = boost::math::quadrature::gauss_kronrod<double, 15>;

struct Panel {
  double a, b, value, error, l1;
  bool operator<(const Panel& o) const { return error < o.error; }
};

Panel panel(const Integrand& f, double a, double b) {
  double err = 0.0, l1 = 0.0;
  const double v = GK15::integrate(f, a, b, 0, 0.0, &err, &l1);
  // Boost reports the error of the rule on [-1, 1]; L1 is already scaled.
  return {a, b, v, err * 0.5 * (b - a), l1};
}

// Global adaptive bisection on the panel with the largest error estimate.
// Stops when the summed error drops below rel_tol * L1 (so integrals that
// cancel to ~0 still terminate) or the panel budget is used.
QuadResult adaptive_finite(const Integrand& f, double a, double b, const QuadOptions& opts) {
  if (a == b) return {0.0, 0.0};
  std::priority_queue<Panel> heap;
  Panel first = panel(f, a, b);
  double value = first.value, error = first.error, l1 = first.l1;
  heap.push(first);
  const std::size_t max_panels = std::size_t{1} << std::min(opts.max_depth, 24u);
  const double floor_tol = 1e-300;
  while (error > std::max(opts.rel_tol * l1, floor_tol) && heap.size() < max_panels) {
    Panel worst = heap.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) break;  // interval no longer splittable
    heap.pop();
    Panel left = panel(f, worst.a, mid);
    Panel right = panel(f, mid, worst.b);
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    l1 += left.l1 + right.l1 - worst.l1;
    heap.push(left);
    heap.push(right);
  }
  // Re-sum to shed accumulated update error.
  value = 0.0;
  error = 0.0;
  while (!heap.empty()) {
    value += heap.top().value;
    error += heap.top().error;
    heap.pop();
  }
  return {value, error};
}

}  // namespace

QuadResult integrate(const Integrand& f, double a, double b, QuadOptions opts) {
  if (std::isnan(a) || std::isnan(b)) throw Error(ErrorCode::InvalidArgument, "integration limits must not be NaN");
  if (a == b) return {0.0, 0.0};
  if (a > b) {
    QuadResult r = integrate(f, b, a, opts);
    r.value = -r.value;
    return r;
  }
  const bool lo_inf = std::isinf(a), hi_inf = std::isinf(b);
  if (lo_inf && hi_inf) {
    QuadResult r = integrate(f, a, 0.0, opts);
    r += integrate(f, 0.0, b, opts);
    return r;
  }
  if (hi_inf) {
    auto g = [&](double t) {
      if (t >= 1.0) return 0.0;
      const double s = 1.0 - t;
      return f(a + t / s) / (s * s);
    };
    return adaptive_finite(g, 0.0, 1.0, opts);
  }
  if (lo_inf) {
    auto g = [&](double t) {
      if (t >= 1.0) return 0.0;
      const double s = 1.0 - t;
      return f(b - t / s) / (s * s);
    };
    return adaptive_finite(g, 0.0, 1.0, opts);
  }
  return adaptive_finite(f, a, b, opts);
}

QuadResult integrate(const Integrand& f, double a, double b, std::span<const double> breaks, QuadOptions opts) {
  if (a == b) return {0.0, 0.0};
  const double lo = std::min(a, b), hi = std::max(a, b);
  std::vector<double> pts{lo};
  for (double p : breaks)
    if (p > lo && p < hi) pts.push_back(p);
  pts.push_back(hi);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  QuadResult total;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) total += integrate(f, pts[i], pts[i + 1], opts);
  if (a > b) total.value = -total.value;
  return total;
}

double gauss_legendre(const Integrand& f, double a, double b, int n) {
  using boost::math::quadrature::gauss;
  switch (n) {
    case 7: return gauss<double, 7>::integrate(f, a, b);
    case 10: return gauss<double, 10>::integrate(f, a, b);
    case 15: return gauss<double, 15>::integrate(f, a, b);
    case 20: return gauss<double, 20>::integrate(f, a, b);
    case 25: return gauss<double, 25>::integrate(f, a, b);
    case 30: return gauss<double, 30>::integrate(f, a, b);
    default: break;
  }
  throw Error(ErrorCode::InvalidArgument, "unsupported Gauss-Legendre order");
}

}  // namespace rbound
