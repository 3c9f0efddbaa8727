#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <boost/random/uniform_int_distribution.hpp>
#include <boost/random/uniform_real_distribution.hpp>

#include "pctsp/graph/instance.hpp"
#include "pctsp/instances/tsplib.hpp"

namespace pctsp {

// Boost distributions have one implementation everywhere, so a seed gives the
// same instance regardless of the standard library.
using Rng = std::mt19937_64;

inline std::int64_t uniform_int(Rng& rng, std::int64_t lo, std::int64_t hi) {
  return boost::random::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

inline double uniform_real(Rng& rng, double lo, double hi) {
  return boost::random::uniform_real_distribution<double>(lo, hi)(rng);
}

using Topology = std::vector<std::pair<Vertex, Vertex>>;  // u < v, sorted

/// Uniform points in [0, side)^2 labelled 1..n.
inline CoordinateSet random_coordinates(int n, Rng& rng, double side = 1000.0) {
  CoordinateSet c;
  c.name = "random" + std::to_string(n);
  for (int i = 0; i < n; ++i) {
    c.labels.push_back(i + 1);
    c.points.push_back({uniform_real(rng, 0.0, side), uniform_real(rng, 0.0, side)});
  }
  return c;
}

inline Topology complete_topology(int n) {
  Topology all;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) all.push_back({u, v});
  return all;
}

namespace detail {

// Is v reachable from u without the edge at position `skip`?
inline bool reachable_without(const std::vector<std::vector<std::pair<Vertex, std::size_t>>>& adj,
                              const std::vector<char>& alive, Vertex u, Vertex v, std::size_t skip) {
  std::vector<char> seen(adj.size(), 0);
  std::vector<Vertex> stack{u};
  seen[u] = 1;
  while (!stack.empty()) {
    const Vertex w = stack.back();
    stack.pop_back();
    for (auto [to, id] : adj[w]) {
      if (id == skip || !alive[id] || seen[to]) continue;
      if (to == v) return true;
      seen[to] = 1;
      stack.push_back(to);
    }
  }
  return false;
}

}  // namespace detail

/// Removes edges of the complete graph in uniformly random order until
/// kappa * n remain, skipping removals that would disconnect the graph.
inline Topology sparsify(int n, int kappa, Rng& rng) {
  const std::int64_t complete = static_cast<std::int64_t>(n) * (n - 1) / 2;
  const std::int64_t target = static_cast<std::int64_t>(kappa) * n;
  if (kappa < 1 || target > complete) fail(Errc::Precondition, "kappa * n must lie in [n, n(n-1)/2]");
  const Topology all = complete_topology(n);
  std::vector<std::vector<std::pair<Vertex, std::size_t>>> adj(static_cast<std::size_t>(n));
  for (std::size_t i = 0; i < all.size(); ++i) {
    adj[all[i].first].push_back({all[i].second, i});
    adj[all[i].second].push_back({all[i].first, i});
  }
  std::vector<std::size_t> order(all.size());
  std::iota(order.begin(), order.end(), 0);
  for (std::size_t i = order.size(); i > 1; --i) {
    std::swap(order[i - 1], order[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<std::int64_t>(i) - 1))]);
  }
  std::vector<char> alive(all.size(), 1);
  std::int64_t count = complete;
  for (std::size_t id : order) {
    if (count == target) break;
    if (!detail::reachable_without(adj, alive, all[id].first, all[id].second, id)) continue;
    alive[id] = 0;
    --count;
  }
  if (count != target) fail(Errc::CannotReachTarget, "cannot remove enough edges without disconnecting");
  Topology out;
  for (std::size_t i = 0; i < all.size(); ++i)
    if (alive[i]) out.push_back(all[i]);
  return out;
}

enum class PrizeMode { One, Mod, Dist };
enum class CostMode { Mst, Euc };

inline const char* to_string(PrizeMode m) {
  switch (m) {
    case PrizeMode::One: return "one";
    case PrizeMode::Mod: return "mod";
    case PrizeMode::Dist: return "dist";
  }
  return "?";
}

inline const char* to_string(CostMode m) { return m == CostMode::Mst ? "mst" : "euc"; }

/// 1 + (7141 i + 73) mod 100 for 1-based label i.
inline Prize mod_prize(std::int64_t label) { return 1 + (7141 * label + 73) % 100; }

/// ONE: 1. MOD: see mod_prize. DIST: 1 + floor(99 / theta * |root - i|), theta
/// the largest distance from the root (the first point).
inline std::vector<Prize> gen_prize(const CoordinateSet& coords, PrizeMode mode) {
  const int n = coords.size();
  std::vector<Prize> prizes(static_cast<std::size_t>(n), 1);
  if (mode == PrizeMode::Mod) {
    for (int i = 0; i < n; ++i) prizes[i] = mod_prize(coords.labels[i]);
  } else if (mode == PrizeMode::Dist) {
    double theta = 0.0;
    for (int i = 0; i < n; ++i) theta = std::max(theta, distance(coords.points[0], coords.points[i]));
    for (int i = 0; i < n; ++i) {
      const double d = distance(coords.points[0], coords.points[i]);
      prizes[i] = theta > 0.0 ? 1 + static_cast<Prize>(std::floor(99.0 * d / theta)) : 1;
    }
  }
  return prizes;
}

inline Cost euclidean_cost(const Point& a, const Point& b) { return static_cast<Cost>(std::ceil(distance(a, b))); }

/// EUC: rounded-up distance. MST: rounded-up distance on the Euclidean
/// minimum spanning tree, and rounded-up distance plus the tree path cost
/// between the endpoints off it.
inline std::vector<Edge> assign_costs(const Topology& topology, const CoordinateSet& coords, CostMode mode) {
  const auto n = static_cast<std::size_t>(coords.size());
  std::vector<Edge> edges;
  edges.reserve(topology.size());
  for (auto [u, v] : topology) edges.push_back({u, v, euclidean_cost(coords.points[u], coords.points[v])});
  if (mode == CostMode::Euc) return edges;

  std::vector<std::size_t> order(edges.size());
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> length(edges.size());
  for (std::size_t i = 0; i < edges.size(); ++i) length[i] = distance(coords.points[edges[i].u], coords.points[edges[i].v]);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return length[a] < length[b]; });
  std::vector<Vertex> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](Vertex v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  std::vector<char> in_tree(edges.size(), 0);
  std::vector<std::vector<std::pair<Vertex, Cost>>> tree(n);
  for (std::size_t i : order) {
    const Vertex a = find(edges[i].u);
    const Vertex b = find(edges[i].v);
    if (a == b) continue;
    parent[a] = b;
    in_tree[i] = 1;
    tree[edges[i].u].push_back({edges[i].v, edges[i].cost});
    tree[edges[i].v].push_back({edges[i].u, edges[i].cost});
  }
  // Tree distances from every vertex.
  std::vector<std::vector<Cost>> dist(n, std::vector<Cost>(n, -1));
  for (Vertex s = 0; s < static_cast<Vertex>(n); ++s) {
    std::vector<Vertex> stack{s};
    dist[s][s] = 0;
    while (!stack.empty()) {
      const Vertex v = stack.back();
      stack.pop_back();
      for (auto [w, c] : tree[v]) {
        if (dist[s][w] >= 0) continue;
        dist[s][w] = checked_add(dist[s][v], c);
        stack.push_back(w);
      }
    }
  }
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (!in_tree[i]) edges[i].cost = checked_add(edges[i].cost, dist[edges[i].u][edges[i].v]);
  }
  return edges;
}

/// ceil(alpha * total), with a small tolerance so exact products are not bumped up.
inline Prize set_quota(Prize total, double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) fail(Errc::Precondition, "alpha must lie in (0, 1]");
  const double raw = alpha * static_cast<double>(total);
  const double slack = 1e-9 * std::max(1.0, raw);
  return std::min<Prize>(total, static_cast<Prize>(std::ceil(raw - slack)));
}

/// Replaces each edge (i, j), i the endpoint with the lower external id, by a
/// path i - k - j through a fresh vertex k with prize length(i, j), cost
/// c(i, k) = c(i, j) and c(k, j) = 0. New vertices get external ids after the
/// largest existing one, in edge order.
inline SparseGraph edge_split_transform(const SparseGraph& g, std::span<const Prize> lengths) {
  if (lengths.size() != static_cast<std::size_t>(g.edge_count())) {
    fail(Errc::Precondition, "one length per edge required");
  }
  std::vector<Prize> prizes(g.prizes().begin(), g.prizes().end());
  std::vector<std::int64_t> external(g.external_ids().begin(), g.external_ids().end());
  std::int64_t next_label = 0;
  for (auto id : external) next_label = std::max(next_label, id);
  std::vector<Edge> edges;
  edges.reserve(2 * static_cast<std::size_t>(g.edge_count()));
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const Edge& old = g.edge(e);
    const Vertex k = static_cast<Vertex>(prizes.size());
    prizes.push_back(lengths[e]);
    external.push_back(++next_label);
    Vertex i = old.u;
    Vertex j = old.v;
    if (g.external_id(j) < g.external_id(i)) std::swap(i, j);
    edges.push_back({i, k, old.cost});
    edges.push_back({k, j, 0});
  }
  return SparseGraph(std::move(prizes), std::move(edges), std::move(external));
}

/// Connected random graph: random attachment tree plus uniformly chosen extra
/// edges up to `edge_target` (capped at the complete graph).
inline SparseGraph random_connected_graph(int n, int edge_target, Cost max_cost, Prize max_prize, Rng& rng,
                                          Cost min_cost = 1, Prize min_prize = 0) {
  std::vector<Edge> edges;
  std::vector<std::vector<char>> have(static_cast<std::size_t>(n), std::vector<char>(static_cast<std::size_t>(n), 0));
  for (Vertex v = 1; v < n; ++v) {
    const auto u = static_cast<Vertex>(uniform_int(rng, 0, v - 1));
    edges.push_back({u, v, uniform_int(rng, min_cost, max_cost)});
    have[u][v] = have[v][u] = 1;
  }
  const std::int64_t cap = static_cast<std::int64_t>(n) * (n - 1) / 2;
  const std::int64_t target = std::min<std::int64_t>(edge_target, cap);
  while (static_cast<std::int64_t>(edges.size()) < target) {
    auto a = static_cast<Vertex>(uniform_int(rng, 0, n - 1));
    auto b = static_cast<Vertex>(uniform_int(rng, 0, n - 1));
    if (a == b || have[a][b]) continue;
    have[a][b] = have[b][a] = 1;
    edges.push_back({std::min(a, b), std::max(a, b), uniform_int(rng, min_cost, max_cost)});
  }
  std::vector<Prize> prizes(static_cast<std::size_t>(n));
  for (auto& p : prizes) p = uniform_int(rng, min_prize, max_prize);
  std::vector<std::int64_t> external(static_cast<std::size_t>(n));
  std::iota(external.begin(), external.end(), 1);
  return SparseGraph(std::move(prizes), std::move(edges), std::move(external));
}

}  // namespace pctsp
