#include "rbound/shape.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "rbound/error.hpp"

namespace rbound {

namespace {

std::vector<double> sample(const std::function<double(double)>& f, double lo, double hi, int n, std::vector<double>& xs) {
  xs.resize(n);
  std::vector<double> ys(n);
  for (int i = 0; i < n; ++i) {
    xs[i] = i + 1 == n ? hi : lo + (hi - lo) * i / (n - 1);
    ys[i] = f(xs[i]);
  }
  return ys;
}

// Direction of each step: +1 up, -1 down, 0 flat (within tolerance).
std::vector<int> directions(const std::vector<double>& ys, double tol) {
  std::vector<int> dir;
  dir.reserve(ys.size());
  for (std::size_t i = 1; i < ys.size(); ++i) {
    const double dy = ys[i] - ys[i - 1];
    if (dy > tol) dir.push_back(1);
    else if (dy < -tol) dir.push_back(-1);
  }
  return dir;
}

double golden_max(const std::function<double(double)>& f, double a, double b) {
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - g * (b - a), d = a + g * (b - a);
  double fc = f(c), fd = f(d);
  for (int it = 0; it < 200 && (b - a) > 1e-15 * (1.0 + std::fabs(a) + std::fabs(b)); ++it) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = f(d);
    }
  }
  return fc >= fd ? c : d;
}

}  // namespace

ShapeProbe probe_shape(const std::function<double(double)>& f, double lo, double hi, int n) {
  if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi) || n < 3)
    throw Error(ErrorCode::InvalidArgument, "probe_shape needs a finite interval and n >= 3");
  std::vector<double> xs;
  const std::vector<double> ys = sample(f, lo, hi, n, xs);
  const auto best = std::max_element(ys.begin(), ys.end());
  const auto worst = std::min_element(ys.begin(), ys.end());
  const std::size_t i = static_cast<std::size_t>(best - ys.begin());

  ShapeProbe out;
  out.sup = *best;
  out.argsup = xs[i];
  out.inf = *worst;

  // Refine the sup between the neighbors of the best sample.
  const double a = xs[i == 0 ? 0 : i - 1];
  const double b = xs[std::min<std::size_t>(i + 1, xs.size() - 1)];
  if (a < b) {
    const double x = golden_max(f, a, b);
    const double y = f(x);
    if (y > out.sup) {
      out.sup = y;
      out.argsup = x;
    }
  }

  const std::vector<int> dir = directions(ys, 1e-13 * std::max(std::fabs(out.sup), 1e-300));
  if (dir.empty()) {
    out.maxima_regions = out.sup > 0.0 ? 1 : 0;
    return out;
  }
  int regions = dir.front() < 0 ? 1 : 0;  // left boundary maximum
  for (std::size_t k = 1; k < dir.size(); ++k)
    if (dir[k - 1] > 0 && dir[k] < 0) ++regions;
  if (dir.back() > 0) ++regions;  // right boundary maximum
  out.maxima_regions = regions;
  return out;
}

int derivative_sign_changes(const std::function<double(double)>& f, double lo, double hi, int n) {
  if (!(lo < hi) || n < 3) throw Error(ErrorCode::InvalidArgument, "derivative_sign_changes needs lo < hi and n >= 3");
  std::vector<double> xs;
  const std::vector<double> ys = sample(f, lo, hi, n, xs);
  double scale = 0.0;
  for (double y : ys) scale = std::max(scale, std::fabs(y));
  const std::vector<int> dir = directions(ys, 1e-13 * std::max(scale, 1e-300));
  int changes = 0;
  for (std::size_t k = 1; k < dir.size(); ++k)
    if (dir[k] != dir[k - 1]) ++changes;
  return changes;
}

}  // namespace rbound
