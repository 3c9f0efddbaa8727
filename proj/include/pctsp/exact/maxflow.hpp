#pragma once

#include <algorithm>
#include <limits>
#include <queue>
#include <vector>

namespace pctsp {

/// Dinic max-flow on an undirected network with real capacities.
class MaxFlow {
 public:
  explicit MaxFlow(int n) : adj_(static_cast<std::size_t>(n)) {}

  void add_undirected(int a, int b, double capacity) {
    adj_[a].push_back({b, capacity, adj_[b].size()});
    adj_[b].push_back({a, capacity, adj_[a].size() - 1});
  }

  double run(int source, int sink) {
    double total = 0.0;
    while (levels(source, sink)) {
      next_.assign(adj_.size(), 0);
      while (double pushed = augment(source, sink, std::numeric_limits<double>::infinity())) total += pushed;
    }
    return total;
  }

  /// Vertices reachable from `source` in the residual network after run().
  std::vector<char> source_side(int source) const {
    std::vector<char> seen(adj_.size(), 0);
    std::vector<int> stack{source};
    seen[source] = 1;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (const Link& l : adj_[v]) {
        if (l.residual > kEps && !seen[l.to]) {
          seen[l.to] = 1;
          stack.push_back(l.to);
        }
      }
    }
    return seen;
  }

 private:
  static constexpr double kEps = 1e-12;

  struct Link {
    int to;
    double residual;
    std::size_t back;
  };

  bool levels(int source, int sink) {
    level_.assign(adj_.size(), -1);
    std::queue<int> q;
    level_[source] = 0;
    q.push(source);
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      for (const Link& l : adj_[v]) {
        if (l.residual > kEps && level_[l.to] < 0) {
          level_[l.to] = level_[v] + 1;
          q.push(l.to);
        }
      }
    }
    return level_[sink] >= 0;
  }

  double augment(int v, int sink, double limit) {
    if (v == sink) return limit;
    for (std::size_t& i = next_[v]; i < adj_[v].size(); ++i) {
      Link& l = adj_[v][i];
      if (l.residual <= kEps || level_[l.to] != level_[v] + 1) continue;
      double pushed = augment(l.to, sink, std::min(limit, l.residual));
      if (pushed > kEps) {
        l.residual -= pushed;
        adj_[l.to][l.back].residual += pushed;
        return pushed;
      }
    }
    return 0.0;
  }

  std::vector<std::vector<Link>> adj_;
  std::vector<int> level_;
  std::vector<std::size_t> next_;
};

}  // namespace pctsp
