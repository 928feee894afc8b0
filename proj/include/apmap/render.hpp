#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "apmap/embedding.hpp"
#include "apmap/error.hpp"
#include "apmap/experiments.hpp"

namespace apmap {

enum class Palette { Continuous, Categorical };

struct RenderConfig {
  std::string color_by = "culture";  // a statistic column, or "culture"
  Palette palette = Palette::Categorical;
  double point_radius = 4.0;
  double width = 800.0;
  double height = 800.0;
  bool legend = true;
};

namespace detail {

inline std::string hsl(double hue, double saturation, double lightness) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "hsl(%.1f,%.1f%%,%.1f%%)", hue, saturation, lightness);
  return buf;
}

inline std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

inline std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", x);
  return buf;
}

}  // namespace detail

// Standalone SVG scatter of the map. Continuous palettes are a single-hue
// lightness ramp (dark = high) with min/max in the legend; categorical ones
// give each culture (label prefix) its own hue.
inline std::string render_svg(const std::vector<MapPoint>& points, const RenderConfig& cfg) {
  if (points.empty()) throw DataError("nothing to render");
  const bool by_culture = cfg.color_by == "culture";
  if (!by_culture) {
    const bool known = std::any_of(points.begin(), points.end(),
                                   [&](const MapPoint& p) { return p.stats.count(cfg.color_by) > 0; });
    if (!known) throw DataError("unknown statistic '" + cfg.color_by + "'");
  }

  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  std::map<std::string, std::string> categories;
  for (const auto& p : points) {
    if (by_culture) {
      categories[culture_of_label(p.label)];
    } else if (auto it = p.stats.find(cfg.color_by); it != p.stats.end()) {
      lo = std::min(lo, it->second);
      hi = std::max(hi, it->second);
    }
  }
  {
    std::size_t i = 0;
    for (auto& [name, color] : categories) {
      color = detail::hsl(360.0 * static_cast<double>(i++) / static_cast<double>(categories.size()), 70, 45);
    }
  }
  const bool ramp = !by_culture && cfg.palette == Palette::Continuous;
  auto color_of = [&](const MapPoint& p) -> std::string {
    if (by_culture) return categories[culture_of_label(p.label)];
    auto it = p.stats.find(cfg.color_by);
    if (it == p.stats.end()) return "#bbbbbb";
    if (ramp) {
      const double t = hi > lo ? (it->second - lo) / (hi - lo) : 0.5;
      return detail::hsl(220, 70, 90 - 70 * t);
    }
    // categorical over a statistic: one hue per distinct value
    return detail::hsl(std::fmod(std::abs(it->second) * 137.508, 360.0), 70, 45);
  };

  double min_x = points[0].x, max_x = points[0].x, min_y = points[0].y, max_y = points[0].y;
  for (const auto& p : points) {
    min_x = std::min(min_x, p.x);
    max_x = std::max(max_x, p.x);
    min_y = std::min(min_y, p.y);
    max_y = std::max(max_y, p.y);
  }
  const double legend_w = cfg.legend ? 160.0 : 0.0;
  const double margin = cfg.point_radius * 2 + 10;
  const double plot_w = std::max(cfg.width - legend_w - 2 * margin, 1.0);
  const double plot_h = std::max(cfg.height - 2 * margin, 1.0);
  const double span = std::max({max_x - min_x, max_y - min_y, 1e-12});
  const double s = std::min(plot_w, plot_h) / span;

  std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + detail::num(cfg.width) + "\" height=\"" +
         detail::num(cfg.height) + "\" viewBox=\"0 0 " + detail::num(cfg.width) + " " + detail::num(cfg.height) + "\">\n";
  out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n<g id=\"points\">\n";
  for (const auto& p : points) {
    const double cx = margin + (p.x - min_x) * s;
    const double cy = margin + (max_y - p.y) * s;  // y up
    out += "<circle cx=\"" + detail::num(cx) + "\" cy=\"" + detail::num(cy) + "\" r=\"" +
           detail::num(cfg.point_radius) + "\" fill=\"" + color_of(p) + "\"><title>" + detail::xml_escape(p.label) +
           "</title></circle>\n";
  }
  out += "</g>\n";
  if (cfg.legend) {
    const double x0 = cfg.width - legend_w + 10;
    out += "<g id=\"legend\" font-family=\"sans-serif\" font-size=\"12\">\n";
    out += "<text x=\"" + detail::num(x0) + "\" y=\"20\">" + detail::xml_escape(cfg.color_by) + "</text>\n";
    if (by_culture) {
      double y = 40;
      for (const auto& [name, color] : categories) {
        out += "<rect x=\"" + detail::num(x0) + "\" y=\"" + detail::num(y - 10) + "\" width=\"12\" height=\"12\" fill=\"" +
               color + "\"/><text x=\"" + detail::num(x0 + 18) + "\" y=\"" + detail::num(y) + "\">" +
               detail::xml_escape(name) + "</text>\n";
        y += 18;
      }
    } else {
      out += "<defs><linearGradient id=\"ramp\" x1=\"0\" y1=\"1\" x2=\"0\" y2=\"0\">"
             "<stop offset=\"0\" stop-color=\"" + detail::hsl(220, 70, 90) + "\"/>"
             "<stop offset=\"1\" stop-color=\"" + detail::hsl(220, 70, 20) + "\"/></linearGradient></defs>\n";
      out += "<rect x=\"" + detail::num(x0) + "\" y=\"40\" width=\"16\" height=\"200\" fill=\"url(#ramp)\"/>\n";
      out += "<text x=\"" + detail::num(x0 + 22) + "\" y=\"50\">max " + format_double(hi) + "</text>\n";
      out += "<text x=\"" + detail::num(x0 + 22) + "\" y=\"240\">min " + format_double(lo) + "</text>\n";
    }
    out += "</g>\n";
  }
  out += "</svg>\n";
  return out;
}

}  // namespace apmap
