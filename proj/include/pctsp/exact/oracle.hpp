#pragma once

#include <functional>
#include <vector>

#include "pctsp/exact/solve_result.hpp"
#include "pctsp/heuristics/result.hpp"

namespace pctsp {

/// Calls `visit(cycle, cost, prize)` once per simple cycle through the root
/// (root first, each cycle in one orientation).
inline void for_each_root_cycle(const Instance& instance,
                                const std::function<void(const std::vector<Vertex>&, Cost, Prize)>& visit) {
  const SparseGraph& g = instance.graph();
  const Vertex root = instance.root();
  std::vector<Vertex> path{root};
  std::vector<char> used(static_cast<std::size_t>(g.vertex_count()), 0);
  used[root] = 1;
  auto dfs = [&](auto&& self, Vertex v, Cost cost, Prize prize) -> void {
    for (const Arc& a : g.neighbours(v)) {
      const Cost step = g.edge(a.edge).cost;
      if (a.to == root) {
        if (path.size() >= 3 && path[1] < path.back()) visit(path, cost + step, prize);
        continue;
      }
      if (used[a.to]) continue;
      used[a.to] = 1;
      path.push_back(a.to);
      self(self, a.to, cost + step, prize + g.prize(a.to));
      path.pop_back();
      used[a.to] = 0;
    }
  };
  dfs(dfs, root, 0, g.prize(root));
}

struct OracleResult {
  SolveResult solve;
  /// Every prize-feasible tour of minimum cost, root first.
  std::vector<std::vector<Vertex>> optimal_tours;
  /// Cheapest cycle through the root and v, ignoring the quota.
  std::vector<Distance> cheapest_through;
};

/// Exhaustive enumeration of cycles through the root.
inline OracleResult oracle_solve(const Instance& instance, int limit_n = 14) {
  detail::Stopwatch clock;
  const SparseGraph& g = instance.graph();
  if (g.vertex_count() > limit_n) fail(Errc::TooLarge, "instance exceeds the oracle size limit");
  OracleResult out;
  out.cheapest_through.assign(static_cast<std::size_t>(g.vertex_count()), Distance::infinity());
  std::optional<Cost> best;
  for_each_root_cycle(instance, [&](const std::vector<Vertex>& cycle, Cost cost, Prize prize) {
    for (Vertex v : cycle) out.cheapest_through[v] = std::min(out.cheapest_through[v], Distance{cost});
    if (prize < instance.quota()) return;
    if (!best || cost < *best) {
      best = cost;
      out.optimal_tours = {cycle};
    } else if (cost == *best) {
      out.optimal_tours.push_back(cycle);
    }
  });
  SolveResult& r = out.solve;
  if (best) {
    r.status = SolveStatus::Optimal;
    r.upper_bound = best;
    r.lower_bound = static_cast<double>(*best);
    r.gap = 0.0;
    r.best_tour = validate_tour(instance, out.optimal_tours.front()).tour;
  } else {
    r.status = SolveStatus::Infeasible;
    r.lower_bound = std::numeric_limits<double>::infinity();
    r.gap = 0.0;
  }
  r.elapsed = clock.seconds();
  return out;
}

}  // namespace pctsp
