#include "rbound/grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "rbound/error.hpp"

namespace rbound {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

// --- uniform mesh -----------------------------------------------------------

double mesh_point(const UniformMesh& m, double z) { return std::fma(2.0 * m.half_gap, z, m.offset); }

Bracket mesh_bracket(const UniformMesh& m, double x) {
  double z = std::floor((x - m.offset) / (2.0 * m.half_gap));
  while (mesh_point(m, z) > x) z -= 1.0;
  while (mesh_point(m, z + 1.0) <= x) z += 1.0;
  const double lo = mesh_point(m, z);
  const double hi = lo == x ? lo : mesh_point(m, z + 1.0);
  return {lo, hi, false};
}

// --- float system -----------------------------------------------------------

double top(const FloatSystem& fs) { return std::ldexp(1.0, fs.k_max); }

double spacing_at(const FloatSystem& fs, double mag) {
  // Gap of the cell [p, p + gap) containing the nonnegative magnitude `mag`.
  if (mag < std::ldexp(1.0, fs.k_min)) {
    return fs.subnormals ? std::ldexp(1.0, fs.k_min - fs.mantissa_bits) : std::ldexp(1.0, fs.k_min);
  }
  int e = 0;
  std::frexp(mag, &e);
  return std::ldexp(1.0, e - 1 - fs.mantissa_bits);
}

Bracket float_bracket_nonneg(const FloatSystem& fs, double x) {
  const double t = top(fs);
  if (x > t) return {t, t, true};
  if (x == t) return {t, t, false};
  const double gap = spacing_at(fs, x);
  const double s = x / gap;
  return {std::floor(s) * gap, std::ceil(s) * gap, false};
}

Bracket float_bracket(const FloatSystem& fs, double x) {
  if (x >= 0.0) return float_bracket_nonneg(fs, x);
  const Bracket b = float_bracket_nonneg(fs, -x);
  return {-b.hi, -b.lo, b.saturated};
}

// --- explicit set -----------------------------------------------------------

Bracket explicit_bracket(const ExplicitSet& s, double x) {
  const auto& p = s.points;
  if (x < p.front()) throw Error(ErrorCode::BelowGrid, "x = " + std::to_string(x) + " lies below the smallest point");
  if (x > p.back()) throw Error(ErrorCode::AboveGrid, "x = " + std::to_string(x) + " lies above the largest point");
  auto it = std::upper_bound(p.begin(), p.end(), x);  // first > x
  const double lo = *(it - 1);
  if (lo == x) return {x, x, false};
  return {lo, *it, false};
}

double relative_gap(double p, double q) {
  if (p <= 0.0 && q >= 0.0) return kInf;
  return (q - p) / std::min(std::fabs(p), std::fabs(q));
}

}  // namespace

Grid Grid::uniform(double half_gap, double offset) {
  if (!(half_gap > 0.0) || !std::isfinite(half_gap))
    throw Error(ErrorCode::InvalidArgument, "uniform mesh half_gap must be positive and finite");
  if (!std::isfinite(offset)) throw Error(ErrorCode::InvalidArgument, "uniform mesh offset must be finite");
  const double width = 2.0 * half_gap;
  double a = std::fmod(offset, width);
  if (a < 0.0) a += width;
  if (a >= width) a = 0.0;
  return Grid(UniformMesh{half_gap, a});
}

Grid Grid::floating(int mantissa_bits, int k_min, int k_max, bool subnormals) {
  if (mantissa_bits < 1 || mantissa_bits > 52)
    throw Error(ErrorCode::InvalidArgument, "float system mantissa bits must lie in [1, 52]");
  if (k_min >= k_max) throw Error(ErrorCode::InvalidArgument, "float system requires k_min < k_max");
  if (k_max > 1023 || k_min - mantissa_bits < -1074)
    throw Error(ErrorCode::InvalidArgument, "float system exponent range exceeds double precision");
  return Grid(FloatSystem{mantissa_bits, k_min, k_max, subnormals});
}

Grid Grid::explicit_set(std::vector<double> points) {
  if (points.size() < 2) throw Error(ErrorCode::InvalidArgument, "explicit set needs at least 2 points");
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!std::isfinite(points[i])) throw Error(ErrorCode::InvalidArgument, "explicit set points must be finite");
    if (i > 0 && !(points[i] > points[i - 1]))
      throw Error(ErrorCode::InvalidArgument, "explicit set points must be strictly increasing");
  }
  return Grid(ExplicitSet{std::move(points)});
}

const UniformMesh& Grid::mesh() const {
  if (const auto* m = std::get_if<UniformMesh>(&kind_)) return *m;
  throw Error(ErrorCode::PreconditionFailed, "grid is not a uniform mesh");
}

const FloatSystem& Grid::float_system() const {
  if (const auto* f = std::get_if<FloatSystem>(&kind_)) return *f;
  throw Error(ErrorCode::PreconditionFailed, "grid is not a float system");
}

Bracket Grid::bracket(double x) const {
  if (std::isnan(x)) throw Error(ErrorCode::InvalidArgument, "cannot bracket NaN");
  return std::visit(Overloaded{
                        [x](const UniformMesh& m) { return mesh_bracket(m, x); },
                        [x](const FloatSystem& f) { return float_bracket(f, x); },
                        [x](const ExplicitSet& s) { return explicit_bracket(s, x); },
                    },
                    kind_);
}

bool Grid::contains(double x) const {
  if (x < domain_lo() || x > domain_hi()) return false;
  const Bracket b = bracket(x);
  return !b.saturated && b.lo == x;
}

std::optional<double> Grid::successor(double p) const {
  if (p >= domain_hi()) return std::nullopt;
  const Bracket b = bracket(std::nextafter(p, kInf));
  if (b.saturated) return std::nullopt;
  return b.hi;
}

std::optional<double> Grid::predecessor(double p) const {
  if (p <= domain_lo()) return std::nullopt;
  const Bracket b = bracket(std::nextafter(p, -kInf));
  if (b.saturated) return std::nullopt;
  return b.lo;
}

double Grid::domain_lo() const {
  return std::visit(Overloaded{
                        [](const UniformMesh&) { return -kInf; },
                        [](const FloatSystem& f) { return -top(f); },
                        [](const ExplicitSet& s) { return s.points.front(); },
                    },
                    kind_);
}

double Grid::domain_hi() const {
  return std::visit(Overloaded{
                        [](const UniformMesh&) { return kInf; },
                        [](const FloatSystem& f) { return top(f); },
                        [](const ExplicitSet& s) { return s.points.back(); },
                    },
                    kind_);
}

bool Grid::sign_symmetric() const {
  return std::visit(Overloaded{
                        [](const UniformMesh& m) { return m.offset == 0.0 || m.offset == m.half_gap; },
                        [](const FloatSystem&) { return true; },
                        [](const ExplicitSet& s) {
                          const auto& p = s.points;
                          for (std::size_t i = 0, j = p.size() - 1; i <= j; ++i, --j) {
                            if (p[i] != -p[j]) return false;
                            if (j == 0) break;
                          }
                          return true;
                        },
                    },
                    kind_);
}

GapStats Grid::gap_stats(double lo, double hi) const {
  if (!(lo < hi)) throw Error(ErrorCode::InvalidArgument, "gap_stats requires lo < hi");
  const double clo = std::max(lo, domain_lo());
  const double chi = std::min(hi, domain_hi());
  if (!(clo < chi)) throw Error(ErrorCode::EmptyRange, "range does not meet the grid");

  GapStats out{0.0, 0.0, lo, hi};
  std::visit(Overloaded{
                 [&](const UniformMesh& m) {
                   const double p0 = floor_to(clo);
                   const double q1 = ceil_to(chi);
                   out.delta0 = 2.0 * m.half_gap;
                   if (p0 <= 0.0 && q1 >= 0.0) {
                     out.eps0 = kInf;
                   } else if (p0 > 0.0) {
                     out.eps0 = out.delta0 / p0;
                   } else {
                     out.eps0 = out.delta0 / std::fabs(q1);
                   }
                 },
                 [&](const FloatSystem& f) {
                   const double p0 = floor_to(clo);
                   const double q1 = ceil_to(chi);
                   // Gaps grow with |x|, so the widest cells sit at the ends.
                   const double first_gap = *successor(p0) - p0;
                   const double last_gap = q1 - *predecessor(q1);
                   out.delta0 = std::max(first_gap, last_gap);
                   // Without subnormals the cells next to 0 are 2^k_min wide.
                   const double tiny = std::ldexp(1.0, f.k_min);
                   if (!f.subnormals && p0 < tiny && q1 > -tiny) out.delta0 = std::max(out.delta0, tiny);
                   if (p0 <= 0.0 && q1 >= 0.0) {
                     out.eps0 = kInf;
                     return;
                   }
                   // Within a binade the relative gap is largest at its first
                   // cell, which is 2^-m for every binade start.
                   const double near = p0 > 0.0 ? p0 : -q1;
                   const double far = p0 > 0.0 ? q1 : -p0;
                   const double near_gap = p0 > 0.0 ? first_gap : last_gap;
                   out.eps0 = near_gap / near;
                   for (int i = f.k_min; i < f.k_max; ++i) {
                     const double b = std::ldexp(1.0, i);
                     if (b > near && b < far) {
                       out.eps0 = std::max(out.eps0, std::ldexp(1.0, -f.mantissa_bits));
                       break;
                     }
                   }
                 },
                 [&](const ExplicitSet&) {
                   for (const Cell& c : cells(clo, chi)) {
                     // cells() clips to the range; recover the full cell.
                     const double p = floor_to(c.lo);
                     const double q = ceil_to(c.hi);
                     out.delta0 = std::max(out.delta0, q - p);
                     out.eps0 = std::max(out.eps0, relative_gap(p, q));
                   }
                 },
             },
             kind_);
  return out;
}

double Grid::cell_count(double lo, double hi) const {
  if (!(lo < hi)) return 0.0;
  const double clo = std::max(lo, domain_lo());
  const double chi = std::min(hi, domain_hi());
  if (!(clo < chi)) return 0.0;
  return std::visit(Overloaded{
                        [&](const UniformMesh& m) { return std::ceil((chi - clo) / (2.0 * m.half_gap)) + 1.0; },
                        [&](const FloatSystem& f) {
                          // 2^m cells per binade plus the cells below 2^k_min.
                          auto side = [&](double a, double b) {  // 0 <= a < b
                            if (!(a < b)) return 0.0;
                            double n = 0.0;
                            const double tiny = std::ldexp(1.0, f.k_min);
                            if (a < tiny) n += std::ceil((std::min(b, tiny) - a) / spacing_at(f, 0.0)) + 1.0;
                            for (int i = f.k_min; i < f.k_max; ++i) {
                              const double blo = std::ldexp(1.0, i), bhi = std::ldexp(1.0, i + 1);
                              const double s = std::max(a, blo), e = std::min(b, bhi);
                              if (s < e) n += std::ceil((e - s) / spacing_at(f, blo)) + 1.0;
                            }
                            return n;
                          };
                          if (clo >= 0.0) return side(clo, chi);
                          if (chi <= 0.0) return side(-chi, -clo);
                          return side(0.0, -clo) + side(0.0, chi);
                        },
                        [&](const ExplicitSet& s) {
                          const auto& p = s.points;
                          auto a = std::upper_bound(p.begin(), p.end(), clo);
                          auto b = std::lower_bound(p.begin(), p.end(), chi);
                          return static_cast<double>(std::distance(a, b)) + 1.0;
                        },
                    },
                    kind_);
}

std::vector<Cell> Grid::cells(double lo, double hi) const {
  std::vector<Cell> out;
  if (!(lo < hi)) return out;
  const double clo = std::max(lo, domain_lo());
  const double chi = std::min(hi, domain_hi());
  if (!(clo < chi)) return out;
  double p = floor_to(clo);
  while (p < chi) {
    const auto q = successor(p);
    if (!q) break;
    out.push_back({std::max(p, clo), std::min(*q, chi)});
    p = *q;
  }
  return out;
}

std::vector<FloatCell> float_cells(const FloatSystem& fs, double lo, double hi) {
  const double t = top(fs);
  if (!(lo >= 0.0 && lo < hi && hi <= t))
    throw Error(ErrorCode::InvalidArgument, "float_cells requires 0 <= lo < hi <= 2^k_max");
  std::vector<FloatCell> out;
  const double tiny = std::ldexp(1.0, fs.k_min);
  if (lo < tiny) {
    const double hg = fs.subnormals ? std::ldexp(1.0, fs.k_min - fs.mantissa_bits - 1) : std::ldexp(1.0, fs.k_min - 1);
    out.push_back({lo, std::min(hi, tiny), hg, true});
  }
  for (int i = fs.k_min; i < fs.k_max; ++i) {
    const double blo = std::ldexp(1.0, i), bhi = std::ldexp(1.0, i + 1);
    const double s = std::max(lo, blo), e = std::min(hi, bhi);
    if (s < e) out.push_back({s, e, std::ldexp(1.0, i - fs.mantissa_bits - 1), false});
  }
  return out;
}

double best_mesh_center(const UniformMesh& mesh) {
  const double d = mesh.half_gap;
  const double candidates[] = {mesh.offset, mesh.offset - d, mesh.offset - 2.0 * d};
  double best = candidates[0];
  for (double c : candidates)
    if (std::fabs(c) < std::fabs(best)) best = c;
  return best;
}

}  // namespace rbound
