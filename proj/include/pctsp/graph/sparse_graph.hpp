#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <queue>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "pctsp/graph/error.hpp"
#include "pctsp/graph/types.hpp"

namespace pctsp {

struct Edge {
  Vertex u = 0;
  Vertex v = 0;
  Cost cost = 0;

  Vertex other(Vertex w) const { return w == u ? v : u; }
  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Neighbour entry of the adjacency list.
struct Arc {
  Vertex to = 0;
  EdgeId edge = 0;
};

/// Undirected, simple, connected graph with integer edge costs and vertex prizes.
///
/// Vertices are dense ids 0..n-1. The caller's original ids are kept in
/// `external_id()`. Adjacency lists are sorted by neighbour id, which every
/// tie-breaking rule in the suite relies on. Immutable once built.
class SparseGraph {
 public:
  SparseGraph() = default;

  /// Builds and validates. Edges may be given in either orientation; they are
  /// stored with u < v.
  SparseGraph(std::vector<Prize> prizes, std::vector<Edge> edges,
              std::vector<std::int64_t> external_ids = {})
      : prizes_(std::move(prizes)), edges_(std::move(edges)), external_(std::move(external_ids)) {
    const auto n = static_cast<Vertex>(prizes_.size());
    if (external_.empty()) {
      external_.resize(prizes_.size());
      for (Vertex i = 0; i < n; ++i) external_[i] = i;
    }
    if (external_.size() != prizes_.size()) {
      fail(Errc::InvariantViolation, "external id table size differs from vertex count");
    }
    for (Vertex i = 0; i < n; ++i) {
      if (prizes_[i] < 0) fail(Errc::InvariantViolation, "negative prize on vertex " + label(i));
    }
    adjacency_.assign(prizes_.size(), {});
    for (EdgeId e = 0; e < static_cast<EdgeId>(edges_.size()); ++e) {
      Edge& edge = edges_[e];
      if (edge.u < 0 || edge.u >= n || edge.v < 0 || edge.v >= n) {
        fail(Errc::InvariantViolation, "edge endpoint out of range");
      }
      if (edge.u == edge.v) fail(Errc::InvariantViolation, "self-loop on vertex " + label(edge.u));
      if (edge.cost < 0) fail(Errc::InvariantViolation, "negative edge cost");
      if (edge.u > edge.v) std::swap(edge.u, edge.v);
      adjacency_[edge.u].push_back({edge.v, e});
      adjacency_[edge.v].push_back({edge.u, e});
    }
    for (auto& list : adjacency_) {
      std::sort(list.begin(), list.end(), [](const Arc& a, const Arc& b) { return a.to < b.to; });
      for (std::size_t k = 1; k < list.size(); ++k) {
        if (list[k].to == list[k - 1].to) {
          const Edge& dup = edges_[list[k].edge];
          fail(Errc::InvariantViolation,
               "parallel edge between " + label(dup.u) + " and " + label(dup.v));
        }
      }
    }
    if (!is_connected()) fail(Errc::InvariantViolation, "graph is not connected");
  }

  Vertex vertex_count() const { return static_cast<Vertex>(prizes_.size()); }
  EdgeId edge_count() const { return static_cast<EdgeId>(edges_.size()); }

  std::span<const Edge> edges() const { return edges_; }
  const Edge& edge(EdgeId e) const { return edges_.at(e); }
  std::span<const Arc> neighbours(Vertex v) const { return adjacency_.at(v); }
  std::size_t degree(Vertex v) const { return adjacency_.at(v).size(); }

  Prize prize(Vertex v) const { return prizes_.at(v); }
  std::span<const Prize> prizes() const { return prizes_; }
  Prize total_prize() const {
    Prize total = 0;
    for (Prize p : prizes_) total = checked_add(total, p);
    return total;
  }

  std::int64_t external_id(Vertex v) const { return external_.at(v); }
  std::span<const std::int64_t> external_ids() const { return external_; }

  std::optional<EdgeId> find_edge(Vertex a, Vertex b) const {
    if (a < 0 || b < 0 || a >= vertex_count() || b >= vertex_count()) return std::nullopt;
    const auto& list = adjacency_[a];
    auto it = std::lower_bound(list.begin(), list.end(), b,
                               [](const Arc& arc, Vertex key) { return arc.to < key; });
    if (it == list.end() || it->to != b) return std::nullopt;
    return it->edge;
  }

  bool has_edge(Vertex a, Vertex b) const { return find_edge(a, b).has_value(); }

  Cost cost(Vertex a, Vertex b) const {
    auto e = find_edge(a, b);
    if (!e) fail(Errc::MissingEdge, "no edge " + label(a) + "-" + label(b));
    return edges_[*e].cost;
  }

  std::optional<Vertex> vertex_of_external(std::int64_t id) const {
    for (Vertex i = 0; i < vertex_count(); ++i) {
      if (external_[i] == id) return i;
    }
    return std::nullopt;
  }

  std::string label(Vertex v) const {
    if (v >= 0 && static_cast<std::size_t>(v) < external_.size()) return std::to_string(external_[v]);
    return "#" + std::to_string(v);
  }

 private:
  bool is_connected() const {
    if (prizes_.empty()) return true;
    std::vector<char> seen(prizes_.size(), 0);
    std::queue<Vertex> frontier;
    frontier.push(0);
    seen[0] = 1;
    std::size_t reached = 1;
    while (!frontier.empty()) {
      Vertex v = frontier.front();
      frontier.pop();
      for (const Arc& a : adjacency_[v]) {
        if (!seen[a.to]) {
          seen[a.to] = 1;
          ++reached;
          frontier.push(a.to);
        }
      }
    }
    return reached == prizes_.size();
  }

  std::vector<Prize> prizes_;
  std::vector<Edge> edges_;
  std::vector<std::int64_t> external_;
  std::vector<std::vector<Arc>> adjacency_;
};

}  // namespace pctsp
