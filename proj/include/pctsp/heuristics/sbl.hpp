#pragma once

#include <optional>
#include <queue>
#include <vector>

#include "pctsp/graph/suurballe.hpp"
#include "pctsp/heuristics/result.hpp"

namespace pctsp {

/// Builds one tour per target from the least-cost disjoint pair and returns
/// the cheapest prize-feasible one, else the one with the most prize.
/// Throws NoDisjointPair when no vertex admits a disjoint pair.
inline HeuristicResult sbl(const Instance& instance) {
  detail::Stopwatch clock;
  const SparseGraph& g = instance.graph();
  std::optional<Tour> best_feasible;
  std::optional<Tour> best_prize;
  for (const auto& pair : suurballe(g, instance.root())) {
    if (!pair) continue;
    Tour tour = validate_tour(instance, pair->as_cycle()).tour;
    if (tour.prize() >= instance.quota()) {
      if (!best_feasible || tour.cost() < best_feasible->cost()) best_feasible = tour;
    }
    if (!best_prize || tour.prize() > best_prize->prize() ||
        (tour.prize() == best_prize->prize() && tour.cost() < best_prize->cost())) {
      best_prize = tour;
    }
  }
  if (!best_prize) fail(Errc::NoDisjointPair, "no vertex has a pair of vertex-disjoint paths from the root");
  HeuristicResult result = detail::make_result(instance, best_feasible ? *best_feasible : *best_prize);
  result.record("SBL");
  result.elapsed = clock.seconds();
  return result;
}

/// Breadth-first search from the root; the first non-tree edge joining two
/// different root branches closes a cycle through the root. Branches are the
/// subtrees hanging off each root neighbour; adjacency is scanned in id order.
inline std::optional<Tour> bfs_initial_cycle(const Instance& instance) {
  const SparseGraph& g = instance.graph();
  const Vertex root = instance.root();
  const auto n = static_cast<std::size_t>(g.vertex_count());
  std::vector<Vertex> parent(n, -1);
  std::vector<Vertex> branch(n, -1);
  std::vector<char> seen(n, 0);
  std::queue<Vertex> frontier;
  seen[root] = 1;
  for (const Arc& a : g.neighbours(root)) {
    seen[a.to] = 1;
    parent[a.to] = root;
    branch[a.to] = a.to;
    frontier.push(a.to);
  }
  auto climb = [&](Vertex v) {
    std::vector<Vertex> path;
    for (; v != root; v = parent[v]) path.push_back(v);
    return path;  // v ... branch head
  };
  while (!frontier.empty()) {
    const Vertex u = frontier.front();
    frontier.pop();
    for (const Arc& a : g.neighbours(u)) {
      const Vertex w = a.to;
      if (w == root || w == parent[u]) continue;
      if (!seen[w]) {
        seen[w] = 1;
        parent[w] = u;
        branch[w] = branch[u];
        frontier.push(w);
      } else if (branch[w] != branch[u]) {
        std::vector<Vertex> cycle{root};
        auto up = climb(u);
        cycle.insert(cycle.end(), up.rbegin(), up.rend());
        auto down = climb(w);
        cycle.insert(cycle.end(), down.begin(), down.end());
        return validate_tour(instance, cycle).tour;
      }
    }
  }
  return std::nullopt;
}

}  // namespace pctsp
