#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <queue>
#include <utility>
#include <vector>

#include "pctsp/graph/sparse_graph.hpp"

namespace pctsp {

/// Least-cost pair of vertex-disjoint root->target paths.
struct DisjointPathPair {
  Vertex target = 0;
  std::vector<Vertex> path_a;
  std::vector<Vertex> path_b;
  Cost combined_cost = 0;
  /// Prize of the vertex union; root and target counted once.
  Prize combined_prize = 0;

  /// Closed tour: path_a followed by path_b reversed without its endpoints.
  std::vector<Vertex> as_cycle() const {
    std::vector<Vertex> cycle = path_a;
    for (auto it = path_b.rbegin() + 1; it + 1 != path_b.rend(); ++it) cycle.push_back(*it);
    return cycle;
  }
};

namespace detail {

// Directed graph obtained by splitting every vertex v into in(v) = 2v and
// out(v) = 2v + 1 joined by a zero-cost arc of capacity one. Undirected
// edges become out(u)->in(v) and out(v)->in(u).
class SplitDigraph {
 public:
  struct DArc {
    int from;
    int to;
    Cost cost;
  };

  SplitDigraph(const SparseGraph& g, Vertex root) : root_(root) {
    const int nodes = 2 * g.vertex_count();
    out_.assign(nodes, {});
    in_.assign(nodes, {});
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
      if (v != root) add(in_node(v), out_node(v), 0);
    }
    for (const Edge& e : g.edges()) {
      if (e.v != root) add(out_node(e.u), in_node(e.v), e.cost);
      if (e.u != root) add(out_node(e.v), in_node(e.u), e.cost);
    }
  }

  static int in_node(Vertex v) { return 2 * v; }
  static int out_node(Vertex v) { return 2 * v + 1; }
  static Vertex vertex_of(int node) { return node / 2; }

  int node_count() const { return static_cast<int>(out_.size()); }
  const std::vector<DArc>& arcs() const { return arcs_; }
  const std::vector<int>& out_arcs(int node) const { return out_[node]; }
  const std::vector<int>& in_arcs(int node) const { return in_[node]; }
  int source() const { return out_node(root_); }

 private:
  void add(int from, int to, Cost cost) {
    const int id = static_cast<int>(arcs_.size());
    arcs_.push_back({from, to, cost});
    out_[from].push_back(id);
    in_[to].push_back(id);
  }

  Vertex root_;
  std::vector<DArc> arcs_;
  std::vector<std::vector<int>> out_;
  std::vector<std::vector<int>> in_;
};

}  // namespace detail

/// For every vertex t != root, the least-cost pair of vertex-disjoint
/// root->t paths, or nullopt when no such pair exists. Entry `root` is nullopt.
///
/// Works on the vertex-split digraph: one shortest-path tree from the root
/// supplies potentials, then per target a second Dijkstra on the residual
/// graph (first path reversed, reduced costs) finds the augmenting path.
inline std::vector<std::optional<DisjointPathPair>> suurballe(const SparseGraph& g, Vertex root) {
  using detail::SplitDigraph;
  const auto n = g.vertex_count();
  std::vector<std::optional<DisjointPathPair>> result(static_cast<std::size_t>(n));
  if (n < 3) return result;

  SplitDigraph dg(g, root);
  const auto& arcs = dg.arcs();
  const int nodes = dg.node_count();
  const int source = dg.source();

  using Entry = std::pair<Cost, int>;
  // Shortest-path tree on the split digraph.
  std::vector<Distance> potential(nodes, Distance::infinity());
  std::vector<int> tree_arc(nodes, -1);
  {
    std::vector<char> done(nodes, 0);
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
    potential[source] = Distance{0};
    heap.push({0, source});
    while (!heap.empty()) {
      auto [d, x] = heap.top();
      heap.pop();
      if (done[x]) continue;
      done[x] = 1;
      for (int a : dg.out_arcs(x)) {
        const int y = arcs[a].to;
        Distance cand{checked_add(d, arcs[a].cost)};
        if (cand < potential[y]) {
          potential[y] = cand;
          tree_arc[y] = a;
          heap.push({cand.value(), y});
        }
      }
    }
  }

  std::vector<char> on_first(arcs.size(), 0);
  std::vector<Distance> dist(nodes);
  std::vector<int> pred(nodes);  // arc id, or -(id + 1) for a reversed first-path arc
  std::vector<char> done(nodes);
  std::vector<char> flow(arcs.size(), 0);

  for (Vertex t = 0; t < n; ++t) {
    if (t == root) continue;
    const int sink = SplitDigraph::in_node(t);
    if (potential[sink].is_infinite()) continue;

    std::vector<int> first;
    for (int x = sink; x != source; x = arcs[tree_arc[x]].from) first.push_back(tree_arc[x]);
    for (int a : first) on_first[a] = 1;

    // Residual Dijkstra with reduced costs. Forward arcs of the first path are
    // saturated; their reversals have reduced cost zero.
    std::fill(dist.begin(), dist.end(), Distance::infinity());
    std::fill(pred.begin(), pred.end(), 0);
    std::fill(done.begin(), done.end(), 0);
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
    dist[source] = Distance{0};
    heap.push({0, source});
    while (!heap.empty()) {
      auto [d, x] = heap.top();
      heap.pop();
      if (done[x]) continue;
      done[x] = 1;
      if (x == sink) break;
      auto relax = [&](int y, Cost reduced, int code) {
        if (done[y]) return;
        Distance cand{checked_add(d, reduced)};
        if (cand < dist[y]) {
          dist[y] = cand;
          pred[y] = code;
          heap.push({cand.value(), y});
        }
      };
      for (int a : dg.out_arcs(x)) {
        if (on_first[a]) continue;
        const int y = arcs[a].to;
        if (potential[y].is_infinite()) continue;
        relax(y, arcs[a].cost + potential[x].value() - potential[y].value(), a);
      }
      for (int a : dg.in_arcs(x)) {
        if (!on_first[a]) continue;
        relax(arcs[a].from, 0, -(a + 1));
      }
    }

    if (dist[sink].is_finite()) {
      for (int a : first) flow[a] = 1;
      for (int x = sink; x != source;) {
        const int code = pred[x];
        if (code >= 0) {
          flow[code] = 1;
          x = arcs[code].from;
        } else {
          const int a = -code - 1;
          flow[a] = 0;
          x = arcs[a].to;
        }
      }

      DisjointPathPair pair;
      pair.target = t;
      std::vector<char> in_union(static_cast<std::size_t>(n), 0);
      auto trace = [&](int start_arc) {
        std::vector<Vertex> path{root};
        int a = start_arc;
        for (;;) {
          pair.combined_cost = checked_add(pair.combined_cost, arcs[a].cost);
          const int y = arcs[a].to;
          if (y == sink) break;
          if (y % 2 == 0) path.push_back(SplitDigraph::vertex_of(y));
          int next = -1;
          for (int b : dg.out_arcs(y)) {
            if (flow[b]) {
              next = b;
              break;
            }
          }
          a = next;
        }
        path.push_back(t);
        for (Vertex v : path) in_union[v] = 1;
        return path;
      };
      std::vector<int> starts;
      for (int a : dg.out_arcs(source)) {
        if (flow[a]) starts.push_back(a);
      }
      pair.path_a = trace(starts.at(0));
      pair.path_b = trace(starts.at(1));
      if (pair.path_b.size() < pair.path_a.size() ||
          (pair.path_b.size() == pair.path_a.size() && pair.path_b < pair.path_a)) {
        std::swap(pair.path_a, pair.path_b);
      }
      for (Vertex v = 0; v < n; ++v) {
        if (in_union[v]) pair.combined_prize = checked_add(pair.combined_prize, g.prize(v));
      }
      result[t] = std::move(pair);
      std::fill(flow.begin(), flow.end(), 0);
    }
    for (int a : first) on_first[a] = 0;
  }
  return result;
}

/// Largest union prize of a least-cost disjoint pair, over total prize.
/// Zero when no pair exists or the total prize is zero.
inline Rational disjoint_prize_ratio(const SparseGraph& g, Vertex root) {
  const Prize total = g.total_prize();
  if (total == 0) return Rational{0};
  Prize best = 0;
  bool any = false;
  for (const auto& pair : suurballe(g, root)) {
    if (!pair) continue;
    any = true;
    best = std::max(best, pair->combined_prize);
  }
  if (!any) return Rational{0};
  return Rational{best} / Rational{total};
}

}  // namespace pctsp
