#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rbound/rounding.hpp"

namespace rbound {

struct VerifyOptions {
  int instances = 200;
  std::uint64_t seed = 0;
  /// Restrict every instance to one scheme.
  std::optional<Scheme> scheme;
  /// Multiplies every bound before comparison; 0.5 injects violations.
  double bound_scale = 1.0;
  /// Absolute slack plus this much relative to the bound.
  double rel_slack = 1e-9;
};

struct VerifyCheck {
  int instance = 0;
  std::string label;
  double oracle = 0.0;
  double bound = 0.0;
  double margin = 0.0;  // bound - oracle
  bool ok = true;
};

struct VerifyResult {
  std::vector<VerifyCheck> checks;
  int instances = 0;
  int violations = 0;
  double worst_margin = 0.0;
  std::string worst_label;
};

/// Randomized dominance suite: each instance draws a model, a small grid, a
/// scheme, an order k and a tier, then compares every applicable bound with
/// its per-cell quadrature oracle.
VerifyResult verify_suite(const VerifyOptions& opts);

}  // namespace rbound
