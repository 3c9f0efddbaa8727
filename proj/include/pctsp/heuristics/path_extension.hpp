#pragma once

#include <algorithm>
#include <optional>
#include <queue>
#include <string>
#include <vector>

#include "pctsp/heuristics/result.hpp"

namespace pctsp {

inline constexpr int kMaxStep = 10;

/// When path extension stops.
enum class ExtensionCriterion {
  /// Stop once the tour is prize-feasible, or no candidate is left.
  UntilFeasible,
  /// Stop once no candidate beats the mean loss of the first iteration.
  BelowMeanLoss,
};

/// A detour between two tour vertices and the tour sub-path it replaces.
struct ExtensionCandidate {
  std::size_t anchor = 0;            // 0-based index of u_h in the tour
  int step = 1;                      // beta
  std::vector<Vertex> extension_path;  // u_h ... u_{h+beta}, interior off-tour
  std::vector<Vertex> internal_path;   // u_h, u_{h+1}, ..., u_{h+beta}
  Cost extension_cost = 0;
  Cost internal_cost = 0;
  Prize extension_prize = 0;
  Prize internal_prize = 0;
};

/// Cost increase per unit of prize gained. Negative when the detour is
/// cheaper than the sub-path it replaces.
inline Rational unitary_loss(Cost extension_cost, Cost internal_cost, Prize extension_prize,
                             Prize internal_prize) {
  if (extension_prize <= internal_prize) {
    fail(Errc::InvalidCandidate, "extension path must carry more prize than the internal path");
  }
  return Rational{extension_cost - internal_cost, extension_prize - internal_prize};
}

inline Rational unitary_loss(const ExtensionCandidate& c) {
  return unitary_loss(c.extension_cost, c.internal_cost, c.extension_prize, c.internal_prize);
}

struct ExtensionOptions {
  int step = 1;
  ExtensionCriterion criterion = ExtensionCriterion::UntilFeasible;
  /// Restrict detours to one intermediate vertex between adjacent tour
  /// vertices (the classic insertion move). Forces step = 1.
  bool single_vertex = false;
};

namespace detail {

// Fewest-edge path from `from` to `to` whose interior avoids tour vertices and
// has at least one vertex. Neighbours are expanded in increasing id order.
inline std::optional<std::vector<Vertex>> bfs_detour(const SparseGraph& g, const std::vector<char>& on_tour,
                                                     Vertex from, Vertex to) {
  const auto n = static_cast<std::size_t>(g.vertex_count());
  std::vector<Vertex> parent(n, -1);
  std::vector<char> seen(n, 0);
  std::queue<Vertex> frontier;
  for (const Arc& a : g.neighbours(from)) {
    if (on_tour[a.to]) continue;
    seen[a.to] = 1;
    parent[a.to] = from;
    frontier.push(a.to);
  }
  while (!frontier.empty()) {
    Vertex v = frontier.front();
    frontier.pop();
    if (g.has_edge(v, to)) {
      std::vector<Vertex> path{to};
      for (Vertex w = v; w != from; w = parent[w]) path.push_back(w);
      path.push_back(from);
      std::reverse(path.begin(), path.end());
      return path;
    }
    for (const Arc& a : g.neighbours(v)) {
      if (on_tour[a.to] || seen[a.to]) continue;
      seen[a.to] = 1;
      parent[a.to] = v;
      frontier.push(a.to);
    }
  }
  return std::nullopt;
}

}  // namespace detail

/// Admissible candidates (detour prize strictly above the replaced sub-path)
/// for every anchor h with h + step inside the tour, so the root is never
/// dropped. One breadth-first candidate per anchor, or every single-vertex
/// insertion in `single_vertex` mode.
inline std::vector<ExtensionCandidate> extension_candidates(const SparseGraph& g, const std::vector<Vertex>& tour,
                                                            int step, bool single_vertex) {
  std::vector<ExtensionCandidate> out;
  const std::size_t k = tour.size();
  if (step < 1 || static_cast<std::size_t>(step) >= k) return out;
  std::vector<char> on_tour(static_cast<std::size_t>(g.vertex_count()), 0);
  for (Vertex v : tour) on_tour[v] = 1;

  auto admit = [&](std::size_t h, std::vector<Vertex> detour) {
    ExtensionCandidate c;
    c.anchor = h;
    c.step = step;
    c.internal_path.assign(tour.begin() + static_cast<std::ptrdiff_t>(h),
                           tour.begin() + static_cast<std::ptrdiff_t>(h) + step + 1);
    c.extension_path = std::move(detour);
    c.extension_cost = detail::path_cost(g, c.extension_path);
    c.internal_cost = detail::path_cost(g, c.internal_path);
    c.extension_prize = detail::path_prize(g, c.extension_path);
    c.internal_prize = detail::path_prize(g, c.internal_path);
    if (c.extension_prize > c.internal_prize) out.push_back(std::move(c));
  };

  for (std::size_t h = 0; h + static_cast<std::size_t>(step) < k; ++h) {
    const Vertex from = tour[h];
    const Vertex to = tour[h + static_cast<std::size_t>(step)];
    if (single_vertex) {
      for (const Arc& a : g.neighbours(from)) {
        if (!on_tour[a.to] && g.has_edge(a.to, to)) admit(h, {from, a.to, to});
      }
    } else if (auto detour = detail::bfs_detour(g, on_tour, from, to)) {
      admit(h, std::move(*detour));
    }
  }
  return out;
}

/// Replaces the internal path of `c` by its extension path.
inline std::vector<Vertex> splice_extension(const std::vector<Vertex>& tour, const ExtensionCandidate& c) {
  std::vector<Vertex> next(tour.begin(), tour.begin() + static_cast<std::ptrdiff_t>(c.anchor));
  next.insert(next.end(), c.extension_path.begin(), c.extension_path.end());
  next.insert(next.end(), tour.begin() + static_cast<std::ptrdiff_t>(c.anchor) + c.step + 1, tour.end());
  return next;
}

/// Repeatedly splices in the candidate with the smallest unitary loss
/// (earliest anchor on ties) for at most n iterations.
inline HeuristicResult path_extend(const Instance& instance, const Tour& tour, const ExtensionOptions& options) {
  detail::Stopwatch clock;
  const SparseGraph& g = instance.graph();
  const int step = options.single_vertex ? 1 : options.step;
  if (step < 1 || step > kMaxStep) fail(Errc::Precondition, "step must lie in [1, 10]");
  if (!tour.contains(instance.root())) fail(Errc::RootAbsent, "tour must contain the root");

  std::vector<Vertex> current(tour.vertices().begin(), tour.vertices().end());
  HeuristicResult result = detail::make_result(instance, tour);
  const bool until_feasible = options.criterion == ExtensionCriterion::UntilFeasible;
  if (until_feasible && result.feasible) {
    result.elapsed = clock.seconds();
    return result;
  }

  std::optional<Rational> mean_loss;
  for (int iteration = 1; iteration <= g.vertex_count(); ++iteration) {
    auto candidates = extension_candidates(g, current, step, options.single_vertex);
    if (candidates.empty()) break;
    std::size_t best = 0;
    std::vector<Rational> losses;
    losses.reserve(candidates.size());
    for (std::size_t c = 0; c < candidates.size(); ++c) {
      losses.push_back(unitary_loss(candidates[c]));
      if (losses[c] < losses[best]) best = c;
    }
    if (!until_feasible) {
      if (!mean_loss) {
        Rational sum{0};
        for (const auto& l : losses) sum += l;
        mean_loss = sum / Rational{static_cast<std::int64_t>(losses.size())};
      }
      if (!(losses[best] < *mean_loss)) break;
    }
    current = splice_extension(current, candidates[best]);
    result = detail::make_result(instance, validate_tour(instance, current).tour);
    result.iterations = iteration;
    if (until_feasible && result.feasible) break;
  }
  result.elapsed = clock.seconds();
  return result;
}

}  // namespace pctsp
