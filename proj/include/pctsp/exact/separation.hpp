#pragma once

#include <algorithm>
#include <set>
#include <vector>

#include "pctsp/exact/maxflow.hpp"
#include "pctsp/exact/model.hpp"

namespace pctsp {

/// Subtour elimination constraint for vertex set S and anchor i in S:
///   x(E(S)) <= y(S) - y_i
/// Equivalent to x(delta(S)) >= 2 y_i under the degree rows.
struct SecCut {
  std::vector<Vertex> set;  // sorted
  Vertex anchor = 0;

  friend auto operator<=>(const SecCut&, const SecCut&) = default;
};

inline constexpr double kViolationTol = 1e-6;

/// x(E(S)) - y(S) + y_i; positive means violated.
inline double sec_violation(const SparseGraph& g, const SecCut& cut, const std::vector<double>& x,
                            const std::vector<double>& y) {
  std::vector<char> in(static_cast<std::size_t>(g.vertex_count()), 0);
  for (Vertex v : cut.set) in[v] = 1;
  double lhs = 0.0;
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (in[g.edge(e).u] && in[g.edge(e).v]) lhs += x[e];
  }
  for (Vertex v : cut.set) lhs -= y[v];
  return lhs + y[cut.anchor];
}

inline lp::Row sec_row(const IlpModel& model, const SecCut& cut) {
  const SparseGraph& g = model.instance.graph();
  std::vector<char> in(static_cast<std::size_t>(g.vertex_count()), 0);
  for (Vertex v : cut.set) in[v] = 1;
  lp::Row row{{}, lp::Sense::LessEqual, 0.0};
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (in[g.edge(e).u] && in[g.edge(e).v]) row.terms.push_back({model.x_col(e), 1.0});
  }
  for (Vertex v : cut.set) {
    if (v != cut.anchor) row.terms.push_back({model.y_col(v), -1.0});
  }
  return row;
}

/// Vertices with y > 0 and edges with x > 0 (numerical zero below 1e-9).
struct SupportGraph {
  std::vector<char> vertex;
  std::vector<EdgeId> edges;
};

inline SupportGraph support_graph(const SparseGraph& g, const std::vector<double>& x, const std::vector<double>& y) {
  constexpr double zero = 1e-9;
  SupportGraph s;
  s.vertex.assign(static_cast<std::size_t>(g.vertex_count()), 0);
  for (Vertex v = 0; v < g.vertex_count(); ++v) s.vertex[v] = y[v] > zero;
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (x[e] > zero && s.vertex[g.edge(e).u] && s.vertex[g.edge(e).v]) s.edges.push_back(e);
  }
  return s;
}

namespace detail {

inline std::vector<int> support_components(const SparseGraph& g, const SupportGraph& s) {
  const auto n = static_cast<std::size_t>(g.vertex_count());
  std::vector<std::vector<Vertex>> adj(n);
  for (EdgeId e : s.edges) {
    adj[g.edge(e).u].push_back(g.edge(e).v);
    adj[g.edge(e).v].push_back(g.edge(e).u);
  }
  std::vector<int> comp(n, -1);
  int next = 0;
  for (Vertex v = 0; v < static_cast<Vertex>(n); ++v) {
    if (!s.vertex[v] || comp[v] >= 0) continue;
    std::vector<Vertex> stack{v};
    comp[v] = next;
    while (!stack.empty()) {
      Vertex u = stack.back();
      stack.pop_back();
      for (Vertex w : adj[u]) {
        if (comp[w] < 0) {
          comp[w] = next;
          stack.push_back(w);
        }
      }
    }
    ++next;
  }
  return comp;
}

}  // namespace detail

/// Violated SECs for the relaxation point. A disconnected support yields one
/// cut per vertex of every component missing the root. Otherwise, and also
/// when that finds nothing, a minimum root-i cut is computed for every
/// support vertex i and the sink side is emitted when violated.
inline std::vector<SecCut> separate_sec(const SparseGraph& g, const std::vector<double>& x,
                                        const std::vector<double>& y, Vertex root) {
  const SupportGraph s = support_graph(g, x, y);
  std::set<SecCut> found;
  auto offer = [&](SecCut cut) {
    if (sec_violation(g, cut, x, y) > kViolationTol) found.insert(std::move(cut));
  };

  const auto comp = detail::support_components(g, s);
  const int root_comp = comp[root];
  std::vector<std::vector<Vertex>> members;
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    if (comp[v] < 0) continue;
    if (static_cast<std::size_t>(comp[v]) >= members.size()) members.resize(static_cast<std::size_t>(comp[v]) + 1);
    members[comp[v]].push_back(v);
  }
  for (int c = 0; c < static_cast<int>(members.size()); ++c) {
    if (c == root_comp) continue;
    for (Vertex v : members[c]) offer({members[c], v});
  }
  if (!found.empty()) return {found.begin(), found.end()};

  for (Vertex i = 0; i < g.vertex_count(); ++i) {
    if (i == root || comp[i] != root_comp || y[i] <= kViolationTol) continue;
    MaxFlow flow(g.vertex_count());
    for (EdgeId e : s.edges) flow.add_undirected(g.edge(e).u, g.edge(e).v, x[e]);
    flow.run(root, i);
    const auto reach = flow.source_side(root);
    SecCut cut;
    cut.anchor = i;
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
      if (!reach[v] && comp[v] == root_comp) cut.set.push_back(v);
    }
    offer(std::move(cut));
  }
  return {found.begin(), found.end()};
}

}  // namespace pctsp
