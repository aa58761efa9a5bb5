#include "optoweak/app/svg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "optoweak/app/csv.hpp"

namespace optoweak::app {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 420.0;
constexpr double kLeft = 80.0;
constexpr double kRight = 20.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 60.0;

constexpr std::array kPalette = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Axis {
  bool log = false;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();

  bool accepts(double v) const { return std::isfinite(v) && (!log || v > 0.0); }
  double map(double v) const { return log ? std::log10(v) : v; }
  void include(double v) {
    lo = std::min(lo, map(v));
    hi = std::max(hi, map(v));
  }
  void finish() {
    if (!std::isfinite(lo)) {
      lo = 0.0;
      hi = 1.0;
    } else if (lo == hi) {
      lo -= 0.5;
      hi += 0.5;
    }
  }
  double unit(double v) const { return (map(v) - lo) / (hi - lo); }
  std::string label(double mapped) const { return format_number(log ? std::pow(10.0, mapped) : mapped); }
};

}  // namespace

std::string render_svg(const PlotSpec& spec, const std::vector<Series>& series) {
  Axis ax{spec.log_x};
  Axis ay{spec.log_y};
  for (const auto& s : series) {
    for (std::size_t k = 0; k < std::min(s.x.size(), s.y.size()); ++k) {
      if (ax.accepts(s.x[k]) && ay.accepts(s.y[k])) {
        ax.include(s.x[k]);
        ay.include(s.y[k]);
      }
    }
  }
  ax.finish();
  ay.finish();

  const double pw = kWidth - kLeft - kRight;
  const double ph = kHeight - kTop - kBottom;
  auto px = [&](double x) { return kLeft + ax.unit(x) * pw; };
  auto py = [&](double y) { return kTop + (1.0 - ay.unit(y)) * ph; };

  std::string out = fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" viewBox=\"0 0 {} {}\">\n"
      "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n",
      kWidth, kHeight, kWidth, kHeight);
  out += fmt::format("<text x=\"{}\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">{}</text>\n", kWidth / 2,
                     escape(spec.title));
  out += fmt::format("<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"none\" stroke=\"black\"/>\n", kLeft,
                     kTop, pw, ph);

  for (int k = 0; k <= 4; ++k) {
    const double u = k / 4.0;
    const double xv = ax.lo + u * (ax.hi - ax.lo);
    const double yv = ay.lo + u * (ay.hi - ay.lo);
    const double x = kLeft + u * pw;
    const double y = kTop + (1.0 - u) * ph;
    out += fmt::format("<line x1=\"{0}\" y1=\"{1}\" x2=\"{0}\" y2=\"{2}\" stroke=\"black\"/>\n", x, kTop + ph,
                       kTop + ph + 5);
    out += fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"middle\" font-size=\"11\">{}</text>\n", x,
                       kTop + ph + 18, ax.label(xv));
    out += fmt::format("<line x1=\"{0}\" y1=\"{1}\" x2=\"{2}\" y2=\"{1}\" stroke=\"black\"/>\n", kLeft - 5, y, kLeft);
    out += fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"end\" font-size=\"11\">{}</text>\n", kLeft - 8, y + 4,
                       ay.label(yv));
  }
  out += fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"middle\" font-size=\"13\">{}</text>\n", kLeft + pw / 2,
                     kHeight - 15, escape(spec.x_label));
  out += fmt::format(
      "<text x=\"18\" y=\"{0}\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 18 {0})\">{1}</text>\n",
      kTop + ph / 2, escape(spec.y_label));

  for (std::size_t s = 0; s < series.size(); ++s) {
    const auto& line = series[s];
    const char* colour = kPalette[s % kPalette.size()];
    std::string points;
    for (std::size_t k = 0; k < std::min(line.x.size(), line.y.size()); ++k) {
      if (!ax.accepts(line.x[k]) || !ay.accepts(line.y[k])) continue;
      points += fmt::format("{:.2f},{:.2f} ", px(line.x[k]), py(line.y[k]));
    }
    out += fmt::format("<polyline fill=\"none\" stroke=\"{}\" stroke-width=\"1.5\" points=\"{}\"/>\n", colour, points);
    out += fmt::format("<text x=\"{}\" y=\"{}\" font-size=\"11\" fill=\"{}\">{}</text>\n", kLeft + 10,
                       kTop + 16 + 14 * static_cast<double>(s), colour, escape(line.label));
  }
  out += "</svg>\n";
  return out;
}

}  // namespace optoweak::app
