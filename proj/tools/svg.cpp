#include "svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace rbound::cli {

namespace {

constexpr double kWidth = 720, kPanelH = 300, kLeft = 80, kRight = 180, kTop = 30, kBottom = 45;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '<') out += "&lt;";
    else if (c == '>') out += "&gt;";
    else if (c == '&') out += "&amp;";
    else out += c;
  }
  return out;
}

}  // namespace

std::string render_svg(const std::vector<Panel>& panels) {
  const double height = kPanelH * static_cast<double>(panels.size());
  std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(kWidth) + "\" height=\"" +
                    num(height) + "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  for (std::size_t p = 0; p < panels.size(); ++p) {
    const Panel& pn = panels[p];
    const double y0 = kPanelH * static_cast<double>(p);
    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
    double lmin = xmin, lmax = -xmin;
    for (const Series& s : pn.series)
      for (std::size_t i = 0; i < s.x.size(); ++i) {
        xmin = std::min(xmin, s.x[i]);
        xmax = std::max(xmax, s.x[i]);
        if (s.y[i] > 0) {
          lmin = std::min(lmin, std::log10(s.y[i]));
          lmax = std::max(lmax, std::log10(s.y[i]));
        }
      }
    if (!(xmax > xmin)) xmax = xmin + 1;
    if (!std::isfinite(lmin)) lmin = -1, lmax = 0;
    lmin = std::floor(lmin);
    lmax = std::ceil(lmax);
    if (lmax <= lmin) lmax = lmin + 1;

    const double pw = kWidth - kLeft - kRight, ph = kPanelH - kTop - kBottom;
    auto px = [&](double x) { return kLeft + (x - xmin) / (xmax - xmin) * pw; };
    auto py = [&](double ly) { return y0 + kTop + (lmax - ly) / (lmax - lmin) * ph; };

    out += "<text x=\"" + num(kLeft) + "\" y=\"" + num(y0 + 18) + "\" font-size=\"13\">" + escape(pn.title) +
           "</text>\n";
    out += "<rect x=\"" + num(kLeft) + "\" y=\"" + num(y0 + kTop) + "\" width=\"" + num(pw) + "\" height=\"" +
           num(ph) + "\" fill=\"none\" stroke=\"black\"/>\n";
    for (double l = lmin; l <= lmax; l += 1.0) {
      out += "<line x1=\"" + num(kLeft) + "\" x2=\"" + num(kLeft + pw) + "\" y1=\"" + num(py(l)) + "\" y2=\"" +
             num(py(l)) + "\" stroke=\"#ddd\"/>\n";
      out += "<text x=\"" + num(kLeft - 6) + "\" y=\"" + num(py(l) + 4) + "\" text-anchor=\"end\">1e" +
             std::to_string(static_cast<int>(l)) + "</text>\n";
    }
    for (int t = 0; t <= 4; ++t) {
      const double x = xmin + (xmax - xmin) * t / 4.0;
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.3g", x);
      out += "<text x=\"" + num(px(x)) + "\" y=\"" + num(y0 + kTop + ph + 16) + "\" text-anchor=\"middle\">" + buf +
             "</text>\n";
    }
    out += "<text x=\"" + num(kLeft + pw / 2) + "\" y=\"" + num(y0 + kTop + ph + 34) +
           "\" text-anchor=\"middle\">" + escape(pn.x_label) + "</text>\n";

    double ly = y0 + kTop + 10;
    for (const Series& s : pn.series) {
      std::string pts;
      for (std::size_t i = 0; i < s.x.size(); ++i)
        if (s.y[i] > 0) pts += num(px(s.x[i])) + "," + num(py(std::log10(s.y[i]))) + " ";
      const std::string dash = s.dashed ? " stroke-dasharray=\"5,3\"" : "";
      out += "<polyline fill=\"none\" stroke=\"" + s.color + "\" stroke-width=\"1.5\"" + dash + " points=\"" + pts +
             "\"/>\n";
      out += "<line x1=\"" + num(kWidth - kRight + 12) + "\" x2=\"" + num(kWidth - kRight + 36) + "\" y1=\"" +
             num(ly) + "\" y2=\"" + num(ly) + "\" stroke=\"" + s.color + "\" stroke-width=\"1.5\"" + dash + "/>\n";
      out += "<text x=\"" + num(kWidth - kRight + 42) + "\" y=\"" + num(ly + 4) + "\">" + escape(s.label) +
             "</text>\n";
      ly += 16;
    }
  }
  out += "</svg>\n";
  return out;
}

}  // namespace rbound::cli
