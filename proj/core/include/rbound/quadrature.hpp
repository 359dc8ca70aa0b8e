#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <span>

namespace rbound {

struct QuadResult {
  double value = 0.0;
  double abs_error = 0.0;

  QuadResult& operator+=(const QuadResult& o) {
    value += o.value;
    abs_error += o.abs_error;
    return *this;
  }
};

struct QuadOptions {
  double rel_tol = 1e-12;
  unsigned max_depth = 18;
};

using Integrand = std::function<double(double)>;

/// Adaptive Gauss-Kronrod (7/15) integral of f over [a, b]. Infinite limits
/// are mapped onto a finite interval through x = a + t / (1 - t).
QuadResult integrate(const Integrand& f, double a, double b, QuadOptions opts = {});

/// Same, with the interval split at the given interior breakpoints (points
/// outside (a, b) are ignored). Use at kinks and support edges.
QuadResult integrate(const Integrand& f, double a, double b, std::span<const double> breaks, QuadOptions opts = {});

/// Fixed n-point Gauss-Legendre rule on a finite interval, n in {7, 10, 15,
/// 20, 25, 30}. Non-adaptive; used to check quadrature-order
/// sensitivity.
double gauss_legendre(const Integrand& f, double a, double b, int n);

}  // namespace rbound
