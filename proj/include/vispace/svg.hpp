#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "vispace/csv.hpp"

namespace vispace {

struct SvgCurve {
  std::string name;
  std::vector<std::pair<double, double>> points;
};

struct SvgStyle {
  double width = 800.0;
  double height = 600.0;
  std::string title;
  std::string x_label;
  std::string y_label;
};

namespace detail {

inline std::string svg_num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return std::string(buf);
}

inline std::string svg_escape(const std::string& text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out += c;
    }
  }
  return out;
}

inline const char* svg_palette(std::size_t i) {
  static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                 "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};
  return colors[i % (sizeof(colors) / sizeof(colors[0]))];
}

}  // namespace detail

// Standalone deterministic SVG: one polyline per curve, axis ticks, legend,
// viewport fitted to the data with a 5 percent margin. Rejects non-finite
// coordinates before touching the filesystem.
inline void emit_svg(const std::string& path, const std::vector<SvgCurve>& curves,
                     const SvgStyle& style = {}) {
  if (curves.empty()) {
    throw std::invalid_argument("emit_svg: need at least one curve");
  }
  double xmin = 0.0, xmax = 0.0, ymin = 0.0, ymax = 0.0;
  bool first = true;
  for (const auto& curve : curves) {
    if (curve.points.empty()) {
      throw std::invalid_argument("emit_svg: curve '" + curve.name +
                                  "' has no points");
    }
    for (std::size_t i = 0; i < curve.points.size(); ++i) {
      const auto& [x, y] = curve.points[i];
      if (!std::isfinite(x) || !std::isfinite(y)) {
        throw std::invalid_argument("emit_svg: curve '" + curve.name +
                                    "' point " + std::to_string(i) +
                                    " is not finite");
      }
      if (first) {
        xmin = xmax = x;
        ymin = ymax = y;
        first = false;
      } else {
        xmin = std::min(xmin, x);
        xmax = std::max(xmax, x);
        ymin = std::min(ymin, y);
        ymax = std::max(ymax, y);
      }
    }
  }
  double span_x = xmax - xmin;
  double span_y = ymax - ymin;
  const double pad_x = span_x > 0.0 ? 0.05 * span_x : 1.0;
  const double pad_y = span_y > 0.0 ? 0.05 * span_y : 1.0;
  xmin -= pad_x;
  xmax += pad_x;
  ymin -= pad_y;
  ymax += pad_y;
  span_x = xmax - xmin;
  span_y = ymax - ymin;

  const double ml = 70.0, mr = 170.0, mt = 45.0, mb = 55.0;
  const double pw = style.width - ml - mr;
  const double ph = style.height - mt - mb;
  const auto px = [&](double x) { return ml + (x - xmin) / span_x * pw; };
  const auto py = [&](double y) { return style.height - mb - (y - ymin) / span_y * ph; };

  std::string s;
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
       detail::svg_num(style.width) + "\" height=\"" +
       detail::svg_num(style.height) + "\" viewBox=\"0 0 " +
       detail::svg_num(style.width) + " " + detail::svg_num(style.height) +
       "\">\n";
  s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (!style.title.empty()) {
    s += "<text x=\"" + detail::svg_num(style.width / 2.0) +
         "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"16\">" +
         detail::svg_escape(style.title) + "</text>\n";
  }

  // Axes along the left and bottom edges of the plot box.
  s += "<line x1=\"" + detail::svg_num(ml) + "\" y1=\"" + detail::svg_num(mt) +
       "\" x2=\"" + detail::svg_num(ml) + "\" y2=\"" +
       detail::svg_num(style.height - mb) + "\" stroke=\"black\"/>\n";
  s += "<line x1=\"" + detail::svg_num(ml) + "\" y1=\"" +
       detail::svg_num(style.height - mb) + "\" x2=\"" +
       detail::svg_num(style.width - mr) + "\" y2=\"" +
       detail::svg_num(style.height - mb) + "\" stroke=\"black\"/>\n";

  char label[40];
  for (int i = 0; i < 5; ++i) {
    const double f = i / 4.0;
    const double xv = xmin + f * span_x;
    const double yv = ymin + f * span_y;
    const double tx = px(xv);
    const double ty = py(yv);
    s += "<line x1=\"" + detail::svg_num(tx) + "\" y1=\"" +
         detail::svg_num(style.height - mb) + "\" x2=\"" + detail::svg_num(tx) +
         "\" y2=\"" + detail::svg_num(style.height - mb + 6.0) +
         "\" stroke=\"black\"/>\n";
    std::snprintf(label, sizeof(label), "%.6g", xv);
    s += "<text x=\"" + detail::svg_num(tx) + "\" y=\"" +
         detail::svg_num(style.height - mb + 20.0) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"11\">" +
         label + "</text>\n";
    s += "<line x1=\"" + detail::svg_num(ml - 6.0) + "\" y1=\"" +
         detail::svg_num(ty) + "\" x2=\"" + detail::svg_num(ml) + "\" y2=\"" +
         detail::svg_num(ty) + "\" stroke=\"black\"/>\n";
    std::snprintf(label, sizeof(label), "%.6g", yv);
    s += "<text x=\"" + detail::svg_num(ml - 10.0) + "\" y=\"" +
         detail::svg_num(ty + 4.0) +
         "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" +
         label + "</text>\n";
  }
  if (!style.x_label.empty()) {
    s += "<text x=\"" + detail::svg_num(ml + pw / 2.0) + "\" y=\"" +
         detail::svg_num(style.height - 12.0) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"13\">" +
         detail::svg_escape(style.x_label) + "</text>\n";
  }
  if (!style.y_label.empty()) {
    s += "<text x=\"18\" y=\"" + detail::svg_num(mt + ph / 2.0) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
         "transform=\"rotate(-90 18 " +
         detail::svg_num(mt + ph / 2.0) + ")\">" +
         detail::svg_escape(style.y_label) + "</text>\n";
  }

  for (std::size_t c = 0; c < curves.size(); ++c) {
    s += "<polyline fill=\"none\" stroke=\"";
    s += detail::svg_palette(c);
    s += "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < curves[c].points.size(); ++i) {
      if (i > 0) {
        s += ' ';
      }
      s += detail::svg_num(px(curves[c].points[i].first)) + "," +
           detail::svg_num(py(curves[c].points[i].second));
    }
    s += "\"/>\n";
  }

  const double lx = style.width - mr + 15.0;
  for (std::size_t c = 0; c < curves.size(); ++c) {
    const double ly = mt + 10.0 + 20.0 * static_cast<double>(c);
    s += "<line x1=\"" + detail::svg_num(lx) + "\" y1=\"" + detail::svg_num(ly) +
         "\" x2=\"" + detail::svg_num(lx + 24.0) + "\" y2=\"" +
         detail::svg_num(ly) + "\" stroke=\"";
    s += detail::svg_palette(c);
    s += "\" stroke-width=\"1.5\"/>\n";
    s += "<text x=\"" + detail::svg_num(lx + 30.0) + "\" y=\"" +
         detail::svg_num(ly + 4.0) +
         "\" font-family=\"sans-serif\" font-size=\"12\">" +
         detail::svg_escape(curves[c].name) + "</text>\n";
  }
  s += "</svg>\n";
  atomic_write_file(path, s);
}

}  // namespace vispace
