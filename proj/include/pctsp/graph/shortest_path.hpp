#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <queue>
#include <utility>
#include <vector>

#include "pctsp/graph/sparse_graph.hpp"

namespace pctsp {

/// Dijkstra output: per-vertex distance and predecessor on one least-cost path.
struct ShortestPathTree {
  Vertex source = 0;
  std::vector<Distance> distance;
  std::vector<std::optional<Vertex>> predecessor;

  /// Vertex sequence source..target, empty when unreachable.
  std::vector<Vertex> path_to(Vertex target) const {
    if (distance.at(target).is_infinite()) return {};
    std::vector<Vertex> path{target};
    while (path.back() != source) path.push_back(*predecessor[path.back()]);
    std::reverse(path.begin(), path.end());
    return path;
  }
};

/// Least-cost paths from `source` avoiding every vertex flagged in `forbidden`
/// (may be empty = nothing forbidden). Equal-cost ties keep the predecessor
/// with the lowest vertex id.
inline ShortestPathTree shortest_path(const SparseGraph& g, Vertex source,
                                      const std::vector<char>& forbidden = {}) {
  const auto n = static_cast<std::size_t>(g.vertex_count());
  auto blocked = [&](Vertex v) { return !forbidden.empty() && forbidden[v]; };
  if (blocked(source)) fail(Errc::Precondition, "shortest_path source is forbidden");

  ShortestPathTree tree;
  tree.source = source;
  tree.distance.assign(n, Distance::infinity());
  tree.predecessor.assign(n, std::nullopt);
  std::vector<char> settled(n, 0);

  using Entry = std::pair<Cost, Vertex>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
  tree.distance[source] = Distance{0};
  heap.push({0, source});
  while (!heap.empty()) {
    auto [d, u] = heap.top();
    heap.pop();
    if (settled[u]) continue;
    settled[u] = 1;
    for (const Arc& arc : g.neighbours(u)) {
      Vertex w = arc.to;
      if (settled[w] || blocked(w)) continue;
      Distance candidate{checked_add(d, g.edge(arc.edge).cost)};
      if (candidate < tree.distance[w]) {
        tree.distance[w] = candidate;
        tree.predecessor[w] = u;
        heap.push({candidate.value(), w});
      } else if (candidate == tree.distance[w] && u < *tree.predecessor[w]) {
        tree.predecessor[w] = u;
      }
    }
  }
  return tree;
}

}  // namespace pctsp
