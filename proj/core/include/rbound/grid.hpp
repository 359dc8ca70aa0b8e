#pragma once

#include <cstddef>
#include <optional>
#include <variant>
#include <vector>

namespace rbound {

/// F = { 2*half_gap*z + offset : z integer }, offset kept in [0, 2*half_gap).
struct UniformMesh {
  double half_gap = 0.5;
  double offset = 0.0;
};

/// 2^m evenly spaced points on each binade [2^i, 2^{i+1}), i = k_min..k_max-1,
/// mirrored for negatives. Zero is always present; with subnormals the gap
/// [0, 2^k_min) is filled with 2^m evenly spaced points. The value 2^k_max is
/// the saturation point for overflow.
struct FloatSystem {
  int mantissa_bits = 23;
  int k_min = -126;
  int k_max = 128;
  bool subnormals = true;
};

/// Strictly increasing finite point set.
struct ExplicitSet {
  std::vector<double> points;
};

/// Enclosing grid neighbors of x. `saturated` is set when x lies beyond the
/// largest magnitude of a FloatSystem; both neighbors are then the clamp value.
struct Bracket {
  double lo = 0.0;
  double hi = 0.0;
  bool saturated = false;
};

struct GapStats {
  double eps0 = 0.0;    // max relative gap, +inf when a cell touches 0
  double delta0 = 0.0;  // max absolute gap
  double lo = 0.0;
  double hi = 0.0;
};

/// A pair of consecutive grid points.
struct Cell {
  double lo = 0.0;
  double hi = 0.0;
};

/// One dyadic interval of a FloatSystem with its half spacing.
struct FloatCell {
  double lo = 0.0;
  double hi = 0.0;
  double half_gap = 0.0;
  bool subnormal = false;
};

class Grid {
 public:
  using Kind = std::variant<UniformMesh, FloatSystem, ExplicitSet>;

  static Grid uniform(double half_gap, double offset = 0.0);
  static Grid floating(int mantissa_bits, int k_min, int k_max, bool subnormals = true);
  static Grid explicit_set(std::vector<double> points);

  const Kind& kind() const noexcept { return kind_; }
  bool is_uniform() const noexcept { return std::holds_alternative<UniformMesh>(kind_); }
  bool is_float() const noexcept { return std::holds_alternative<FloatSystem>(kind_); }
  bool is_explicit() const noexcept { return std::holds_alternative<ExplicitSet>(kind_); }
  const UniformMesh& mesh() const;
  const FloatSystem& float_system() const;

  /// Neighbors (floor, ceil). Throws BelowGrid / AboveGrid outside an
  /// ExplicitSet; saturates (flagged) outside a FloatSystem.
  Bracket bracket(double x) const;
  double floor_to(double x) const { return bracket(x).lo; }
  double ceil_to(double x) const { return bracket(x).hi; }
  bool contains(double x) const;

  /// Next grid point strictly above / below the grid point p, if any.
  std::optional<double> successor(double p) const;
  std::optional<double> predecessor(double p) const;

  GapStats gap_stats(double lo, double hi) const;

  /// Number of cells intersecting (lo, hi), computed without enumeration.
  double cell_count(double lo, double hi) const;

  /// Cells [p, q] of consecutive grid points intersecting (lo, hi), clipped
  /// to [lo, hi]. Stops at the grid boundary.
  std::vector<Cell> cells(double lo, double hi) const;

  /// True when x in F implies -x in F.
  bool sign_symmetric() const;

  /// Interval on which rounding is well defined without saturation or
  /// BelowGrid/AboveGrid errors.
  double domain_lo() const;
  double domain_hi() const;

 private:
  explicit Grid(Kind k) : kind_(std::move(k)) {}
  Kind kind_;
};

/// Dyadic decomposition of [lo, hi] with 0 <= lo < hi <= 2^k_max: the
/// subnormal interval [0, 2^k_min) followed by the binades it meets.
std::vector<FloatCell> float_cells(const FloatSystem& fs, double lo, double hi);

/// Mesh point or mesh midpoint nearest to 0 (ties go to the earlier of
/// a, a - half_gap, a - 2*half_gap). Always |c| <= half_gap / 2.
double best_mesh_center(const UniformMesh& mesh);

}  // namespace rbound
