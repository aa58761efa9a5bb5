#pragma once

// Minimal line plots: one polyline per series over a framed axis box.

#include <string>
#include <vector>

namespace optoweak::app {

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

struct PlotSpec {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_x = false;
  bool log_y = false;
};

// Points that are non-finite, or non-positive on a log axis, are skipped.
std::string render_svg(const PlotSpec& spec, const std::vector<Series>& series);

}  // namespace optoweak::app
