#pragma once

#include <string>
#include <vector>

namespace rbound::cli {

struct Series {
  std::string label;
  std::string color;
  std::vector<double> x;
  std::vector<double> y;
  bool dashed = false;
};

struct Panel {
  std::string title;
  std::string x_label;
  std::vector<Series> series;
};

/// Panels stacked vertically, linear x, log10 y. Nonpositive y values are
/// dropped from the polylines.
std::string render_svg(const std::vector<Panel>& panels);

}  // namespace rbound::cli
