#pragma once

#include <functional>

namespace rbound {

/// Result of sampling a nonnegative function on a finite interval.
struct ShapeProbe {
  double sup = 0.0;
  double argsup = 0.0;
  double inf = 0.0;
  /// Connected regions of local maxima seen on the probe grid (boundary
  /// maxima included). 1 means unimodal or monotone.
  int maxima_regions = 0;
};

/// Dense scan (n points) followed by golden-section refinement of the best
/// sample. Relative changes below 1e-13 of the sup count as flat.
ShapeProbe probe_shape(const std::function<double(double)>& f, double lo, double hi, int n = 2001);

/// Sign changes of the discrete derivative of f on the probe grid.
int derivative_sign_changes(const std::function<double(double)>& f, double lo, double hi, int n = 401);

}  // namespace rbound
