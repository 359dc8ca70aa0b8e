#pragma once

#include <string>
#include <string_view>

#include "rbound/bounds.hpp"
#include "rbound/distributions.hpp"
#include "rbound/grid.hpp"

namespace rbound {

/// Grid from a JSON object: {"kind":"uniform","half_gap":..,"offset":..},
/// {"kind":"float","m":..,"k_min":..,"k_max":..,"subnormals":..} or
/// {"kind":"explicit","points":[..]}. Throws ConfigError.
Grid parse_grid_json(std::string_view json);

/// Distribution from {"kind":"semicircle","r":..,"mu":..},
/// {"kind":"normal","mu":..,"sigma2":..}, {"kind":"exponential","lambda":..}
/// or {"kind":"uniform","lo":..,"hi":..}.
DensityModel parse_distribution_json(std::string_view json);

/// Compact command-line form "kind:key=value,key=value", e.g.
/// "semicircle:r=1,mu=0" or "float:m=8,k_min=-8,k_max=8". Explicit grids
/// take points separated by ';': "explicit:points=0;1;2".
Grid parse_grid_spec(std::string_view spec);
DensityModel parse_distribution_spec(std::string_view spec);

/// {"value", "leading":{"coef","power","base"}, "higher_order":{..},
/// "theorem", "tier", "mode", "two_sided":{"center","radius"}, "flags"}.
/// Optional members are omitted when absent.
std::string report_to_json(const BoundReport& r, int indent = -1);
BoundReport report_from_json(std::string_view json);

}  // namespace rbound
