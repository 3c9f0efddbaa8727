#pragma once

#include <optional>
#include <vector>

#include "pctsp/graph/instance.hpp"
#include "pctsp/graph/shortest_path.hpp"
#include "pctsp/graph/suurballe.hpp"

namespace pctsp {

enum class CostCoverMode { None, Spcc, Dpcc };

/// Lower bound A[i] on the cost of any tour through the root and i.
struct CostCoverArray {
  CostCoverMode mode = CostCoverMode::None;
  std::vector<Distance> bound;
};

/// SPCC: twice the shortest root-i distance. DPCC: cheapest pair of
/// vertex-disjoint root-i paths, infinite when none exists. The root gets 0.
inline CostCoverArray precompute_cost_cover(const Instance& instance, CostCoverMode mode) {
  const SparseGraph& g = instance.graph();
  CostCoverArray out;
  out.mode = mode;
  out.bound.assign(static_cast<std::size_t>(g.vertex_count()), Distance{0});
  switch (mode) {
    case CostCoverMode::None:
      break;
    case CostCoverMode::Spcc: {
      const auto tree = shortest_path(g, instance.root());
      for (Vertex v = 0; v < g.vertex_count(); ++v) out.bound[v] = tree.distance[v] + tree.distance[v];
      break;
    }
    case CostCoverMode::Dpcc: {
      const auto pairs = suurballe(g, instance.root());
      for (Vertex v = 0; v < g.vertex_count(); ++v) {
        if (v == instance.root()) continue;
        out.bound[v] = pairs[v] ? Distance{pairs[v]->combined_cost} : Distance::infinity();
      }
      break;
    }
  }
  return out;
}

/// Vertices whose bound exceeds the upper bound; none when no upper bound is known.
inline std::vector<Vertex> apply_cost_cover(const CostCoverArray& array, std::optional<Cost> upper_bound) {
  std::vector<Vertex> fixed;
  if (!upper_bound || array.mode == CostCoverMode::None) return fixed;
  for (Vertex v = 0; v < static_cast<Vertex>(array.bound.size()); ++v) {
    if (array.bound[v] > Distance{*upper_bound}) fixed.push_back(v);
  }
  return fixed;
}

inline const char* to_string(CostCoverMode m) {
  switch (m) {
    case CostCoverMode::None: return "none";
    case CostCoverMode::Spcc: return "spcc";
    case CostCoverMode::Dpcc: return "dpcc";
  }
  return "?";
}

}  // namespace pctsp
