#pragma once

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include "pctsp/graph/instance.hpp"

namespace pctsp {

struct PreprocessReport {
  std::vector<Vertex> kept_vertices;     // ids in the input instance
  std::vector<Vertex> removed_vertices;  // ids in the input instance
  /// Input id -> output id, nullopt for removed vertices.
  std::vector<std::optional<Vertex>> vertex_remap;
  /// p(V(H)) / p(V(G)); 1 when the input carries no prize.
  Rational prize_ratio{1};
};

/// Vertex sets of the biconnected components of `g` (Hopcroft-Tarjan,
/// iterative DFS with an edge stack). Bridges form two-vertex components.
inline std::vector<std::vector<Vertex>> biconnected_components(const SparseGraph& g) {
  const auto n = static_cast<std::size_t>(g.vertex_count());
  std::vector<int> order(n, -1);
  std::vector<int> low(n, 0);
  std::vector<std::vector<Vertex>> components;
  std::vector<EdgeId> edge_stack;
  std::vector<int> mark(n, -1);
  int clock = 0;

  struct Frame {
    Vertex v;
    EdgeId via;
    std::size_t next;
  };

  for (Vertex start = 0; start < static_cast<Vertex>(n); ++start) {
    if (order[start] != -1) continue;
    std::vector<Frame> stack{{start, -1, 0}};
    order[start] = low[start] = clock++;
    while (!stack.empty()) {
      Frame& f = stack.back();
      auto nbrs = g.neighbours(f.v);
      if (f.next < nbrs.size()) {
        const Arc a = nbrs[f.next++];
        if (a.edge == f.via) continue;
        if (order[a.to] == -1) {
          edge_stack.push_back(a.edge);
          order[a.to] = low[a.to] = clock++;
          stack.push_back({a.to, a.edge, 0});
        } else if (order[a.to] < order[f.v]) {
          edge_stack.push_back(a.edge);
          low[f.v] = std::min(low[f.v], order[a.to]);
        }
        continue;
      }
      const Frame done = f;
      stack.pop_back();
      if (stack.empty()) break;
      Vertex parent = stack.back().v;
      low[parent] = std::min(low[parent], low[done.v]);
      if (low[done.v] >= order[parent]) {
        const int id = static_cast<int>(components.size());
        std::vector<Vertex> comp;
        for (;;) {
          EdgeId e = edge_stack.back();
          edge_stack.pop_back();
          for (Vertex w : {g.edge(e).u, g.edge(e).v}) {
            if (mark[w] != id) {
              mark[w] = id;
              comp.push_back(w);
            }
          }
          if (e == done.via) break;
        }
        std::sort(comp.begin(), comp.end());
        components.push_back(std::move(comp));
      }
    }
  }
  return components;
}

/// Keeps the union of biconnected components containing the root; no tour
/// through the root can visit any other vertex. Bridges are two-vertex
/// components that no cycle can use, so they do not count. Quota and root
/// carry over.
inline std::pair<Instance, PreprocessReport> preprocess(const Instance& instance) {
  const SparseGraph& g = instance.graph();
  const Vertex root = instance.root();
  // A lone root is what a root on no cycle reduces to; it maps to itself.
  if (g.degree(root) == 0 && g.vertex_count() > 1) fail(Errc::RootIsolated, "root has no incident edges");

  std::vector<char> keep(static_cast<std::size_t>(g.vertex_count()), 0);
  keep[root] = 1;
  for (const auto& comp : biconnected_components(g)) {
    if (comp.size() >= 3 && std::binary_search(comp.begin(), comp.end(), root)) {
      for (Vertex v : comp) keep[v] = 1;
    }
  }

  PreprocessReport report;
  report.vertex_remap.assign(keep.size(), std::nullopt);
  std::vector<Prize> prizes;
  std::vector<std::int64_t> external;
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    if (keep[v]) {
      report.vertex_remap[v] = static_cast<Vertex>(report.kept_vertices.size());
      report.kept_vertices.push_back(v);
      prizes.push_back(g.prize(v));
      external.push_back(g.external_id(v));
    } else {
      report.removed_vertices.push_back(v);
    }
  }
  std::vector<Edge> edges;
  for (const Edge& e : g.edges()) {
    if (keep[e.u] && keep[e.v]) edges.push_back({*report.vertex_remap[e.u], *report.vertex_remap[e.v], e.cost});
  }
  const Prize total = g.total_prize();
  Prize kept = 0;
  for (Prize p : prizes) kept = checked_add(kept, p);
  if (total > 0) report.prize_ratio = Rational{kept, total};

  Instance reduced(SparseGraph(std::move(prizes), std::move(edges), std::move(external)), instance.quota(),
                   *report.vertex_remap[root], instance.name(), instance.metadata());
  return {std::move(reduced), std::move(report)};
}

}  // namespace pctsp
