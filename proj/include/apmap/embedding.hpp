#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <string>
#include <string_view>
#include <vector>

#include "apmap/error.hpp"
#include "apmap/metrics.hpp"
#include "apmap/rng.hpp"

namespace apmap {

struct MapPoint {
  std::string label;
  double x = 0.0;
  double y = 0.0;
  std::map<std::string, double> stats;
};

struct EmbeddingConfig {
  std::size_t iterations = 1000;
  // maximum displacement per step at the start, as a fraction of the largest distance
  double initial_temperature = 0.1;
  // linear cooling ends at this fraction of the initial temperature
  double final_temperature = 0.001;
  // ideal lengths below this fraction of the largest distance are clamped to it
  double min_length = 1e-3;
  // label of the point rotated to the bottom of the map; ignored if absent
  std::string anchor_label = "empty";
};

struct Embedding {
  std::vector<MapPoint> points;  // same order as the matrix labels
  std::string warning;
};

inline std::uint64_t label_hash(std::string_view label) {
  std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a
  for (unsigned char ch : label) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

namespace detail {

inline void rotate_anchor_down(std::vector<MapPoint>& pts, std::string_view anchor) {
  auto it = std::find_if(pts.begin(), pts.end(), [&](const MapPoint& p) { return p.label == anchor; });
  if (it == pts.end()) return;
  double cx = 0.0;
  double cy = 0.0;
  for (const auto& p : pts) {
    cx += p.x;
    cy += p.y;
  }
  cx /= static_cast<double>(pts.size());
  cy /= static_cast<double>(pts.size());
  const double ax = it->x - cx;
  const double ay = it->y - cy;
  if (std::hypot(ax, ay) == 0.0) return;
  const double angle = -std::acos(-1.0) / 2.0 - std::atan2(ay, ax);
  const double cs = std::cos(angle);
  const double sn = std::sin(angle);
  for (auto& p : pts) {
    const double x = p.x - cx;
    const double y = p.y - cy;
    p.x = cs * x - sn * y;
    p.y = sn * x + cs * y;
  }
}

}  // namespace detail

// Force-directed layout of a distance matrix (Fruchterman-Reingold forces
// with a per-pair ideal length): each pair attracts with d^2/L and repels
// with L^2/d, which balance exactly at d = L. Every pair is an edge.
// Deterministic for a given seed and independent of input order: points are
// processed in label order and start at a position hashed from their label.
inline Embedding embed(const DistanceMatrix& dm, const EmbeddingConfig& cfg, std::uint64_t seed) {
  dm.validate();
  const std::size_t n = dm.size();
  if (n < 2) throw DataError("embedding needs at least two points");
  if (cfg.iterations < 1) throw DataError("embedding needs at least one iteration");

  Embedding out;
  out.points.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.points[i].label = dm.labels()[i];
  const double scale = dm.max();
  if (scale == 0.0) {
    out.warning = "all distances are zero; every point placed at the origin";
    return out;
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return dm.labels()[a] < dm.labels()[b]; });

  std::vector<double> ideal(n * n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      ideal[a * n + b] = std::max(dm(order[a], order[b]) / scale, cfg.min_length);
    }
  }
  std::vector<double> x(n);
  std::vector<double> y(n);
  for (std::size_t a = 0; a < n; ++a) {
    Rng rng(mix64(label_hash(dm.labels()[order[a]]) ^ seed));
    x[a] = rng.uniform();
    y[a] = rng.uniform();
  }

  std::vector<double> dx(n);
  std::vector<double> dy(n);
  const double t0 = cfg.initial_temperature;
  const double t1 = cfg.initial_temperature * cfg.final_temperature;
  for (std::size_t it = 0; it < cfg.iterations; ++it) {
    const double frac = cfg.iterations == 1 ? 0.0 : static_cast<double>(it) / static_cast<double>(cfg.iterations - 1);
    const double temperature = t0 + (t1 - t0) * frac;
    std::fill(dx.begin(), dx.end(), 0.0);
    std::fill(dy.begin(), dy.end(), 0.0);
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = a + 1; b < n; ++b) {
        double ux = x[a] - x[b];
        double uy = y[a] - y[b];
        double d = std::hypot(ux, uy);
        if (d < 1e-12) {
          // coincident points: separate along a fixed direction
          ux = 1e-6 * static_cast<double>(a + 1);
          uy = 1e-6 * static_cast<double>(b + 1);
          d = std::hypot(ux, uy);
        }
        const double len = ideal[a * n + b];
        const double force = len * len / d - d * d / len;  // > 0 pushes apart
        const double fx = ux / d * force;
        const double fy = uy / d * force;
        dx[a] += fx;
        dy[a] += fy;
        dx[b] -= fx;
        dy[b] -= fy;
      }
    }
    for (std::size_t a = 0; a < n; ++a) {
      const double len = std::hypot(dx[a], dy[a]);
      if (len == 0.0) continue;
      const double step = std::min(len, temperature) / len;
      x[a] += dx[a] * step;
      y[a] += dy[a] * step;
    }
  }

  for (std::size_t a = 0; a < n; ++a) {
    out.points[order[a]].x = x[a] * scale;
    out.points[order[a]].y = y[a] * scale;
  }
  // least-squares uniform rescale so embedded lengths are in target units
  double td = 0.0;
  double dd = 0.0;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      const double d = std::hypot(x[a] - x[b], y[a] - y[b]) * scale;
      td += dm(order[a], order[b]) * d;
      dd += d * d;
    }
  }
  if (dd > 0.0) {
    for (auto& p : out.points) {
      p.x *= td / dd;
      p.y *= td / dd;
    }
  }
  detail::rotate_anchor_down(out.points, cfg.anchor_label);
  return out;
}

// Normalized stress between target distances and embedded Euclidean
// distances after the best uniform rescaling of the layout:
//   sqrt( sum (delta - s*d)^2 / sum delta^2 ),  s = sum(delta d) / sum(d^2).
// Invariant under rigid motions and scaling of the layout.
inline double stress(const DistanceMatrix& dm, const std::vector<MapPoint>& points) {
  if (points.size() != dm.size()) throw DataError("stress: point count does not match matrix");
  double dd = 0.0;
  double td = 0.0;
  double tt = 0.0;
  for (std::size_t i = 0; i < dm.size(); ++i) {
    for (std::size_t j = i + 1; j < dm.size(); ++j) {
      const double d = std::hypot(points[i].x - points[j].x, points[i].y - points[j].y);
      const double t = dm(i, j);
      dd += d * d;
      td += t * d;
      tt += t * t;
    }
  }
  if (tt == 0.0) return 0.0;
  const double s = dd == 0.0 ? 0.0 : td / dd;
  double num = 0.0;
  for (std::size_t i = 0; i < dm.size(); ++i) {
    for (std::size_t j = i + 1; j < dm.size(); ++j) {
      const double d = std::hypot(points[i].x - points[j].x, points[i].y - points[j].y);
      const double r = dm(i, j) - s * d;
      num += r * r;
    }
  }
  return std::sqrt(num / tt);
}

// Embedded Euclidean distances as a matrix with the same labels.
inline DistanceMatrix embedded_distances(const std::vector<MapPoint>& points) {
  std::vector<std::string> labels;
  for (const auto& p : points) labels.push_back(p.label);
  DistanceMatrix out(std::move(labels));
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      out.set(i, j, std::hypot(points[i].x - points[j].x, points[i].y - points[j].y));
    }
  }
  return out;
}

// CSV with columns label,x,y followed by the union of stat names (sorted).
inline std::string to_csv(const std::vector<MapPoint>& points) {
  std::vector<std::string> stat_names;
  for (const auto& p : points) {
    for (const auto& [name, value] : p.stats) stat_names.push_back(name);
  }
  std::sort(stat_names.begin(), stat_names.end());
  stat_names.erase(std::unique(stat_names.begin(), stat_names.end()), stat_names.end());
  std::string out = "label,x,y";
  for (const auto& s : stat_names) out += "," + s;
  out += "\n";
  for (const auto& p : points) {
    out += p.label + "," + format_double(p.x) + "," + format_double(p.y);
    for (const auto& s : stat_names) {
      out += ",";
      if (auto it = p.stats.find(s); it != p.stats.end()) out += format_double(it->second);
    }
    out += "\n";
  }
  return out;
}

inline std::vector<MapPoint> map_points_from_csv(std::string_view text) {
  const auto rows = detail::lines(text);
  if (rows.empty()) throw ParseError(1, "empty coordinates file");
  const auto header = detail::split(rows[0], ',');
  if (header.size() < 3 || header[0] != "label" || header[1] != "x" || header[2] != "y") {
    throw ParseError(1, "header must start with label,x,y");
  }
  std::vector<MapPoint> out;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto cells = detail::split(rows[r], ',');
    if (cells.size() != header.size()) throw ParseError(r + 1, "wrong number of columns");
    MapPoint p;
    p.label = std::string(cells[0]);
    auto num = [&](std::string_view s, double& v) {
      auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
      if (ec != std::errc() || ptr != s.data() + s.size()) throw ParseError(r + 1, "bad number '" + std::string(s) + "'");
    };
    num(cells[1], p.x);
    num(cells[2], p.y);
    for (std::size_t c = 3; c < cells.size(); ++c) {
      if (cells[c].empty()) continue;
      double v = 0.0;
      num(cells[c], v);
      p.stats[std::string(header[c])] = v;
    }
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace apmap
