#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <span>
#include <unordered_map>
#include <vector>

namespace pctsp {

struct BranchingConfig {
  /// Nodes at depth <= strong_depth use full strong branching.
  int strong_depth = 1;
  /// Observations per direction before a pseudo-cost is trusted.
  int reliability = 1;
  /// Most-fractional candidates probed per node; 0 means all of them.
  int max_probes = 0;
};

struct BranchCandidate {
  int column = 0;
  double value = 0.0;
};

/// LP outcome with one column fixed to 0 (down) or 1 (up).
struct ProbeOutcome {
  bool infeasible = false;
  double objective = 0.0;
};

using Probe = std::function<ProbeOutcome(int column, bool up)>;

/// Average objective degradation per unit of fractionality, per column and direction.
class PseudoCosts {
 public:
  void record(int column, bool up, double per_unit) {
    Entry& e = table_[column];
    (up ? e.up_sum : e.down_sum) += std::max(0.0, per_unit);
    ++(up ? e.up_count : e.down_count);
  }

  int count(int column, bool up) const {
    auto it = table_.find(column);
    if (it == table_.end()) return 0;
    return up ? it->second.up_count : it->second.down_count;
  }

  double mean(int column, bool up) const {
    auto it = table_.find(column);
    if (it == table_.end()) return 0.0;
    const Entry& e = it->second;
    const int c = up ? e.up_count : e.down_count;
    return c == 0 ? 0.0 : (up ? e.up_sum : e.down_sum) / c;
  }

 private:
  struct Entry {
    double down_sum = 0.0;
    double up_sum = 0.0;
    int down_count = 0;
    int up_count = 0;
  };
  std::unordered_map<int, Entry> table_;
};

/// Product score of the two child degradations; an infeasible child scores infinity.
inline double branch_score(double down_gain, double up_gain) {
  constexpr double floor = 1e-6;
  if (std::isinf(down_gain) || std::isinf(up_gain)) return std::numeric_limits<double>::infinity();
  return std::max(down_gain, floor) * std::max(up_gain, floor);
}

/// Pseudo-cost estimate of a candidate's score.
inline double pseudo_score(const PseudoCosts& store, const BranchCandidate& c) {
  const double f = c.value - std::floor(c.value);
  return branch_score(f * store.mean(c.column, false), (1.0 - f) * store.mean(c.column, true));
}

struct BranchDecision {
  int column = -1;
  double score = 0.0;
  int probes = 0;
};

/// Picks the branching column. Strong branching at shallow depth probes
/// both children of each candidate; deeper nodes use pseudo-costs and probe
/// only the candidates whose pseudo-costs are not yet reliable. Probes feed
/// the store. Ties go to the lower column index.
inline BranchDecision branch_select(std::span<const BranchCandidate> candidates, double parent_objective,
                                    PseudoCosts& store, int depth, const BranchingConfig& config,
                                    const Probe& probe) {
  BranchDecision best;
  if (candidates.empty()) return best;
  std::vector<BranchCandidate> order(candidates.begin(), candidates.end());
  std::sort(order.begin(), order.end(), [](const BranchCandidate& a, const BranchCandidate& b) {
    return a.column < b.column;
  });

  std::vector<char> probe_allowed(order.size(), 1);
  if (config.max_probes > 0 && static_cast<int>(order.size()) > config.max_probes) {
    std::vector<std::size_t> idx(order.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    auto distance_to_half = [&](std::size_t i) { return std::abs(order[i].value - std::floor(order[i].value) - 0.5); };
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
      return distance_to_half(a) < distance_to_half(b);
    });
    std::fill(probe_allowed.begin(), probe_allowed.end(), 0);
    for (int k = 0; k < config.max_probes; ++k) probe_allowed[idx[k]] = 1;
  }

  for (std::size_t i = 0; i < order.size(); ++i) {
    const BranchCandidate& c = order[i];
    const double f = c.value - std::floor(c.value);
    const bool strong = depth <= config.strong_depth;
    const bool unreliable =
        store.count(c.column, false) < config.reliability || store.count(c.column, true) < config.reliability;
    double score;
    if ((strong || unreliable) && probe_allowed[i]) {
      double gains[2];
      for (int dir = 0; dir < 2; ++dir) {
        const bool up = dir == 1;
        const ProbeOutcome out = probe(c.column, up);
        ++best.probes;
        if (out.infeasible) {
          gains[dir] = std::numeric_limits<double>::infinity();
          continue;
        }
        gains[dir] = std::max(0.0, out.objective - parent_objective);
        store.record(c.column, up, gains[dir] / std::max(up ? 1.0 - f : f, 1e-6));
      }
      score = branch_score(gains[0], gains[1]);
    } else {
      score = pseudo_score(store, c);
    }
    if (best.column < 0 || score > best.score) {
      best.column = c.column;
      best.score = score;
    }
  }
  return best;
}

/// True when the gap improved by at most gamma over the last tau cut rounds.
inline bool tailing_off(std::span<const double> history, int tau = 5, double gamma = 0.001) {
  if (tau < 1 || history.size() < static_cast<std::size_t>(tau) + 1) return false;
  const double now = history.back();
  const double before = history[history.size() - 1 - static_cast<std::size_t>(tau)];
  if (std::isinf(before) && std::isinf(now)) return true;
  return before - now <= gamma;
}

}  // namespace pctsp
