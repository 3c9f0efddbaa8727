#pragma once

#include <algorithm>
#include <span>
#include <vector>

#include "pctsp/graph/error.hpp"
#include "pctsp/graph/instance.hpp"

namespace pctsp {

struct TourCheck;

/// Simple cycle through the root. The closing edge back to the first vertex
/// is implicit. Only `validate_tour` constructs a non-empty one.
class Tour {
 public:
  Tour() = default;

  std::span<const Vertex> vertices() const { return vertices_; }
  std::size_t size() const { return vertices_.size(); }
  Cost cost() const { return cost_; }
  Prize prize() const { return prize_; }

  bool contains(Vertex v) const {
    return std::find(vertices_.begin(), vertices_.end(), v) != vertices_.end();
  }

  bool prize_feasible(Prize quota) const { return prize_ >= quota; }

  friend bool operator==(const Tour&, const Tour&) = default;

 private:
  friend TourCheck validate_tour(const Instance& instance, std::span<const Vertex> seq);

  std::vector<Vertex> vertices_;
  Cost cost_ = 0;
  Prize prize_ = 0;
};

/// Outcome of validation: the tour plus its prize-feasibility flag.
struct TourCheck {
  Tour tour;
  bool prize_feasible = false;
};

/// Checks that `seq` is a simple cycle of the instance graph containing the
/// root, and returns it rotated so that the root comes first.
inline TourCheck validate_tour(const Instance& instance, std::span<const Vertex> seq) {
  const SparseGraph& g = instance.graph();
  if (seq.empty()) fail(Errc::Precondition, "empty vertex sequence");
  std::vector<char> seen(static_cast<std::size_t>(g.vertex_count()), 0);
  for (Vertex v : seq) {
    if (v < 0 || v >= g.vertex_count()) fail(Errc::InvariantViolation, "vertex id out of range");
    if (seen[v]) fail(Errc::NotSimple, "vertex " + g.label(v) + " repeated");
    seen[v] = 1;
  }
  const auto k = seq.size();
  Cost cost = 0;
  for (std::size_t i = 0; i < k; ++i) {
    Vertex a = seq[i];
    Vertex b = seq[(i + 1) % k];
    auto e = g.find_edge(a, b);
    if (!e) fail(Errc::MissingEdge, "no edge between " + g.label(a) + " and " + g.label(b));
    cost = checked_add(cost, g.edge(*e).cost);
  }
  // A two-vertex sequence would traverse its single edge twice.
  if (k < 3) fail(Errc::TooShort, "a tour needs at least three vertices");
  auto root_it = std::find(seq.begin(), seq.end(), instance.root());
  if (root_it == seq.end()) fail(Errc::RootAbsent, "root " + g.label(instance.root()) + " not in tour");

  TourCheck out;
  out.tour.vertices_.reserve(k);
  out.tour.vertices_.insert(out.tour.vertices_.end(), root_it, seq.end());
  out.tour.vertices_.insert(out.tour.vertices_.end(), seq.begin(), root_it);
  Prize prize = 0;
  for (Vertex v : seq) prize = checked_add(prize, g.prize(v));
  out.tour.cost_ = cost;
  out.tour.prize_ = prize;
  out.prize_feasible = prize >= instance.quota();
  return out;
}

/// Recomputes cost and prize from scratch; used to audit cached values.
inline std::pair<Cost, Prize> recompute_cost_prize(const SparseGraph& g, std::span<const Vertex> seq) {
  Cost cost = 0;
  Prize prize = 0;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    cost = checked_add(cost, g.cost(seq[i], seq[(i + 1) % seq.size()]));
    prize = checked_add(prize, g.prize(seq[i]));
  }
  return {cost, prize};
}

}  // namespace pctsp
