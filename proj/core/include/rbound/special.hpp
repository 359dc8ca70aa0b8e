#pragma once

namespace rbound {

/// Upper incomplete gamma Gamma(s, x) = int_x^inf t^{s-1} e^{-t} dt for
/// s > 0, x >= 0. Series for x < s + 1, Lentz continued fraction otherwise;
/// relative tolerance 1e-12 or better.
double upper_incomplete_gamma(double s, double x);

/// Lower incomplete gamma by the same series.
double lower_incomplete_gamma(double s, double x);

}  // namespace rbound
