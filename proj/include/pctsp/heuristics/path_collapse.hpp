#pragma once

#include <optional>
#include <vector>

#include "pctsp/graph/shortest_path.hpp"
#include "pctsp/heuristics/result.hpp"

namespace pctsp {

/// Which edge prices the closing step when ranking collapse candidates.
enum class ClosingRule {
  /// c(S) + c(s, u_i): the edge that actually closes the collapsed tour.
  EdgeToStart,
  /// c(S) + c(s, u_j) as literally printed; candidates without that edge are skipped.
  EdgeToEnd,
};

struct CollapseOptions {
  ClosingRule closing = ClosingRule::EdgeToStart;
  /// Only closing paths of exactly two edges u_j -> s -> u_i.
  bool two_edge_only = false;
};

/// Shortens a prize-feasible tour by keeping a root-containing sub-path just
/// short of the quota and reconnecting its ends through a least-cost path
/// outside it. Returns the cheapest strictly improving collapse over all k
/// starting positions, or the input tour.
inline HeuristicResult path_collapse(const Instance& instance, const Tour& tour,
                                     const CollapseOptions& options = {}) {
  detail::Stopwatch clock;
  const SparseGraph& g = instance.graph();
  const Prize quota = instance.quota();
  if (tour.prize() < quota) fail(Errc::Precondition, "path collapse needs a prize-feasible tour");

  const std::vector<Vertex> seq(tour.vertices().begin(), tour.vertices().end());
  const std::size_t k = seq.size();
  std::optional<Tour> best;
  Cost best_cost = tour.cost();

  for (std::size_t i = 0; i < k; ++i) {
    // Sub-path u_i..u_j, extended forward while the next vertex keeps it below quota.
    std::vector<Vertex> sub{seq[i]};
    Prize sub_prize = g.prize(seq[i]);
    if (sub_prize >= quota) continue;
    for (std::size_t step = 1; step < k; ++step) {
      const Vertex next = seq[(i + step) % k];
      if (sub_prize + g.prize(next) >= quota) break;
      sub.push_back(next);
      sub_prize += g.prize(next);
    }
    if (sub.size() == k) continue;
    bool has_root = false;
    for (Vertex v : sub) has_root |= v == instance.root();
    if (!has_root) continue;

    const Vertex start = sub.front();
    const Vertex end = sub.back();
    std::vector<char> in_sub(static_cast<std::size_t>(g.vertex_count()), 0);
    for (Vertex v : sub) in_sub[v] = 1;
    const Cost sub_cost = detail::path_cost(g, sub);

    std::optional<std::vector<Vertex>> chosen;
    std::optional<Cost> chosen_key;
    auto consider = [&](std::vector<Vertex> closing_path, Cost path_cost, Vertex s) {
      Cost key = path_cost;
      if (options.closing == ClosingRule::EdgeToStart) {
        key = checked_add(key, g.cost(s, start));
      } else {
        auto e = g.find_edge(s, end);
        if (!e) return;
        key = checked_add(key, g.edge(*e).cost);
      }
      Prize gained = 0;
      for (std::size_t t = 1; t < closing_path.size(); ++t) gained += g.prize(closing_path[t]);
      if (sub_prize + gained < quota) return;
      if (sub.size() + closing_path.size() - 1 < 3) return;
      if (!chosen_key || key < *chosen_key) {
        chosen_key = key;
        chosen = std::move(closing_path);
      }
    };

    if (options.two_edge_only) {
      for (const Arc& a : g.neighbours(start)) {
        if (in_sub[a.to]) continue;
        if (auto e = g.find_edge(end, a.to)) consider({end, a.to}, g.edge(*e).cost, a.to);
      }
    } else {
      std::vector<char> forbidden = in_sub;
      forbidden[end] = 0;
      const auto tree = shortest_path(g, end, forbidden);
      for (const Arc& a : g.neighbours(start)) {
        if (in_sub[a.to] || tree.distance[a.to].is_infinite()) continue;
        consider(tree.path_to(a.to), tree.distance[a.to].value(), a.to);
      }
    }
    if (!chosen) continue;

    std::vector<Vertex> collapsed = sub;
    collapsed.insert(collapsed.end(), chosen->begin() + 1, chosen->end());
    const Cost collapsed_cost = checked_add(sub_cost, checked_add(detail::path_cost(g, *chosen),
                                                                  g.cost(chosen->back(), start)));
    if (collapsed_cost < best_cost) {
      best = validate_tour(instance, collapsed).tour;
      best_cost = collapsed_cost;
    }
  }

  HeuristicResult result = detail::make_result(instance, best ? *best : tour);
  result.iterations = best ? 1 : 0;
  result.elapsed = clock.seconds();
  return result;
}

}  // namespace pctsp
