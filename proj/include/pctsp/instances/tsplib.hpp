#pragma once

#include <cmath>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "pctsp/graph/error.hpp"

namespace pctsp {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

inline double distance(const Point& a, const Point& b) { return std::hypot(a.x - b.x, a.y - b.y); }

/// Planar points with 1-based labels; the first point is the root.
struct CoordinateSet {
  std::string name;
  std::vector<std::int64_t> labels;
  std::vector<Point> points;

  int size() const { return static_cast<int>(points.size()); }
};

namespace detail {

inline std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

}  // namespace detail

/// Reads a TSPLIB document with 2-D Euclidean-style coordinates
/// (EUC_2D, CEIL_2D, ATT, or no weight type at all).
inline CoordinateSet parse_tsplib(std::string_view text) {
  CoordinateSet out;
  long dimension = -1;
  bool in_coords = false;
  std::set<std::int64_t> seen;
  std::istringstream lines{std::string(text)};
  std::string raw;
  while (std::getline(lines, raw)) {
    const std::string line = detail::trim(raw);
    if (line.empty()) continue;
    if (line == "EOF") break;
    if (in_coords) {
      std::istringstream row(line);
      std::int64_t label;
      Point p;
      if (!(row >> label)) {
        in_coords = false;  // next section header
      } else {
        if (!(row >> p.x >> p.y)) fail(Errc::MalformedSection, "bad coordinate line: " + line);
        if (!seen.insert(label).second) fail(Errc::MalformedSection, "duplicate node label " + std::to_string(label));
        out.labels.push_back(label);
        out.points.push_back(p);
        continue;
      }
    }
    const auto colon = line.find(':');
    const std::string key = detail::trim(line.substr(0, colon));
    const std::string value = colon == std::string::npos ? std::string() : detail::trim(line.substr(colon + 1));
    if (key == "NAME") {
      out.name = value;
    } else if (key == "DIMENSION") {
      try {
        dimension = std::stol(value);
      } catch (const std::exception&) {
        fail(Errc::MalformedSection, "bad DIMENSION");
      }
    } else if (key == "EDGE_WEIGHT_TYPE") {
      if (value != "EUC_2D" && value != "CEIL_2D" && value != "ATT") {
        fail(Errc::UnsupportedEdgeWeightType, "edge weight type " + value + " is not planar Euclidean");
      }
    } else if (key == "NODE_COORD_SECTION") {
      in_coords = true;
    } else if (key == "EDGE_WEIGHT_SECTION" || key == "DISPLAY_DATA_SECTION" || key == "TOUR_SECTION") {
      fail(Errc::MalformedSection, "unexpected section " + key);
    }
  }
  if (out.points.empty()) fail(Errc::MalformedSection, "missing NODE_COORD_SECTION");
  if (dimension >= 0 && dimension != out.size()) fail(Errc::MalformedSection, "DIMENSION does not match coordinates");
  return out;
}

}  // namespace pctsp
