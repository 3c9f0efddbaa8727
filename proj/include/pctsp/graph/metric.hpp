#pragma once

#include <vector>

#include "pctsp/graph/shortest_path.hpp"

namespace pctsp {

/// An edge is metric when its cost equals the least-cost distance between
/// its endpoints.
inline bool is_metric_edge(const SparseGraph& g, EdgeId e) {
  const Edge& edge = g.edge(e);
  return shortest_path(g, edge.u).distance[edge.v] == Distance{edge.cost};
}

/// Per-edge metric flags, one Dijkstra per vertex that has incident edges.
inline std::vector<char> metric_edge_flags(const SparseGraph& g) {
  std::vector<char> flags(static_cast<std::size_t>(g.edge_count()), 0);
  for (Vertex u = 0; u < g.vertex_count(); ++u) {
    bool needed = false;
    for (const Arc& a : g.neighbours(u)) needed |= a.to > u;
    if (!needed) continue;
    const auto tree = shortest_path(g, u);
    for (const Arc& a : g.neighbours(u)) {
      if (a.to > u) flags[a.edge] = tree.distance[a.to] == Distance{g.edge(a.edge).cost};
    }
  }
  return flags;
}

inline std::int64_t count_metric_edges(const SparseGraph& g) {
  std::int64_t count = 0;
  for (char f : metric_edge_flags(g)) count += f;
  return count;
}

/// Fraction of edges beyond a spanning tree that are metric. A tree (m = n-1)
/// reports 1 since every one of its edges is metric.
inline Rational metric_surplus(const SparseGraph& g) {
  const std::int64_t n = g.vertex_count();
  const std::int64_t m = g.edge_count();
  if (m <= n - 1) return Rational{1};
  return Rational{count_metric_edges(g) - (n - 1), m - (n - 1)};
}

}  // namespace pctsp
