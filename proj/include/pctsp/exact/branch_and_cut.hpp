#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "pctsp/exact/branching.hpp"
#include "pctsp/exact/cost_cover.hpp"
#include "pctsp/exact/model.hpp"
#include "pctsp/exact/separation.hpp"
#include "pctsp/exact/solve_result.hpp"
#include "pctsp/heuristics/sbl_pec.hpp"

namespace pctsp {

struct SolverConfig {
  CostCoverMode cost_cover = CostCoverMode::None;
  double time_limit = std::numeric_limits<double>::infinity();  // seconds, wall clock
  int tau = 5;
  double gamma = 0.001;
  BranchingConfig branching;  // branching.strong_depth is the strong-branching depth
  std::uint64_t seed = 0;     // recorded only; the search itself is deterministic
  long max_nodes = 0;         // 0 means unlimited
  bool initial_heuristic = true;
  /// Stop after the initial incumbent and the cost-cover fixes, as if a node
  /// limit were hit before the root; PRE-CUTS are final at that point.
  bool presolve_only = false;
  lp::Options lp;
};

struct NodeTrace {
  long node = 0;
  int depth = 0;
  double lp_objective = 0.0;  // last relaxation value, NaN if none solved
  long cuts_added = 0;
  std::string outcome;  // infeasible | pruned | incumbent | branched | interrupted
};

struct SolverHooks {
  std::function<void(const NodeTrace&)> on_node;
  /// Every SEC added, with the relaxation point that violated it.
  std::function<void(const SecCut&, const LpPoint&)> on_sec_cut;
};

namespace detail {

struct BranchNode {
  long id = 0;
  int depth = 0;
  double bound = -std::numeric_limits<double>::infinity();
  std::vector<std::pair<int, double>> fixes;  // column -> fixed value
  int branch_column = -1;
  bool branch_up = false;
  double branch_distance = 1.0;
  double parent_objective = 0.0;
};

struct NodeOrder {
  bool operator()(const BranchNode& a, const BranchNode& b) const {
    return std::tie(a.bound, a.id) > std::tie(b.bound, b.id);
  }
};

// Cycle on the edges with x = 1, walked from the root.
inline std::vector<Vertex> assemble_tour(const SparseGraph& g, const std::vector<double>& x, Vertex root) {
  std::vector<std::vector<Vertex>> adj(static_cast<std::size_t>(g.vertex_count()));
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (x[e] > 0.5) {
      adj[g.edge(e).u].push_back(g.edge(e).v);
      adj[g.edge(e).v].push_back(g.edge(e).u);
    }
  }
  std::vector<Vertex> seq{root};
  Vertex prev = -1;
  Vertex cur = root;
  for (;;) {
    if (adj[cur].size() != 2) fail(Errc::NumericalFailure, "integral point is not a cycle");
    const Vertex next = adj[cur][0] != prev ? adj[cur][0] : adj[cur][1];
    if (next == root) break;
    if (seq.size() > static_cast<std::size_t>(g.vertex_count())) fail(Errc::NumericalFailure, "cycle walk overran");
    seq.push_back(next);
    prev = cur;
    cur = next;
  }
  return seq;
}

}  // namespace detail

/// Best-bound branch & cut. The initial upper bound comes from SBL-PEC; SECs
/// are separated lazily into a global pool; cost-cover fixes are applied at
/// the start and after every incumbent improvement. A node branches when
/// its relaxation is fractional and separation finds nothing or tails off.
inline SolveResult branch_and_cut(const Instance& instance, const SolverConfig& config = {},
                                  const SolverHooks& hooks = {}) {
  detail::Stopwatch clock;
  constexpr double inf = std::numeric_limits<double>::infinity();
  const SparseGraph& g = instance.graph();
  const Vertex root = instance.root();
  SolveResult result;
  SolveCounters& counters = result.counters;

  IlpModel model;
  try {
    model = build_model(instance);
  } catch (const Error& e) {
    if (e.code() != Errc::TrivialInfeasible) throw;
    result.status = SolveStatus::Infeasible;
    result.lower_bound = inf;
    result.elapsed = clock.seconds();
    return result;
  }
  const int columns = model.column_count();
  std::vector<double> lower(static_cast<std::size_t>(columns), 0.0);
  std::vector<double> upper(static_cast<std::size_t>(columns), 1.0);

  std::optional<Tour> incumbent;
  if (config.initial_heuristic) {
    HeuristicResult h = sbl_pec(instance);
    if (h.feasible) incumbent = *h.tour;
  }

  CostCoverArray cover;
  if (config.cost_cover != CostCoverMode::None) cover = precompute_cost_cover(instance, config.cost_cover);
  std::vector<char> fixed(static_cast<std::size_t>(g.vertex_count()), 0);
  auto apply_cover = [&]() -> long {
    if (config.cost_cover == CostCoverMode::None || !incumbent) return 0;
    long added = 0;
    for (Vertex v : apply_cost_cover(cover, incumbent->cost())) {
      if (fixed[v]) continue;
      fixed[v] = 1;
      upper[model.y_col(v)] = 0.0;
      ++added;
    }
    counters.cost_cover_cuts += added;
    return added;
  };
  counters.pre_cuts = apply_cover();

  std::vector<lp::Row> pool;
  std::set<SecCut> pool_keys;
  PseudoCosts pseudo;
  bool solved_any = false;
  bool out_of_time = false;
  auto time_up = [&] {
    if (solved_any && clock.seconds() > config.time_limit) out_of_time = true;
    return out_of_time;
  };
  // Costs are integral, so a node whose bound rounds up to the incumbent cost cannot improve on it.
  auto prunable = [&](double bound) {
    return incumbent && std::ceil(bound - kIntegralityTol) >= static_cast<double>(incumbent->cost());
  };

  auto solve_with = [&](const std::vector<std::pair<int, double>>& fixes) {
    lp::Problem p;
    p.objective = model.objective;
    p.lower = lower;
    p.upper = upper;
    for (auto [col, v] : fixes) {
      p.lower[col] = std::max(p.lower[col], v);
      p.upper[col] = std::min(p.upper[col], v);
    }
    p.rows = model.rows;
    p.rows.insert(p.rows.end(), pool.begin(), pool.end());
    ++counters.lp_solves;
    solved_any = true;
    return lp::solve(p, config.lp);
  };

  std::priority_queue<detail::BranchNode, std::vector<detail::BranchNode>, detail::NodeOrder> open;
  long next_id = 0;
  detail::BranchNode root_node;
  root_node.id = next_id++;
  open.push(root_node);

  auto report = [&](const detail::BranchNode& node, double obj, long cuts, const char* outcome) {
    if (hooks.on_node) hooks.on_node({node.id, node.depth, obj, cuts, outcome});
  };

  while (!open.empty()) {
    if (config.presolve_only || time_up()) break;
    if (config.max_nodes > 0 && counters.nodes >= config.max_nodes) break;
    detail::BranchNode node = open.top();
    open.pop();
    if (prunable(node.bound)) continue;
    ++counters.nodes;

    std::vector<double> history;
    double first_objective = std::numeric_limits<double>::quiet_NaN();
    double objective = std::numeric_limits<double>::quiet_NaN();
    long cuts_here = 0;
    bool do_branch = false;
    LpPoint point;
    for (int round = 0;; ++round) {
      if (time_up()) {
        node.bound = std::isnan(objective) ? node.bound : std::max(node.bound, objective);
        open.push(node);
        report(node, objective, cuts_here, "interrupted");
        break;
      }
      const lp::Solution sol = solve_with(node.fixes);
      if (sol.status != lp::Status::Optimal) {
        report(node, objective, cuts_here, "infeasible");
        break;
      }
      objective = sol.objective;
      if (round == 0) {
        first_objective = objective;
        if (node.branch_column >= 0) {
          pseudo.record(node.branch_column, node.branch_up,
                        (objective - node.parent_objective) / std::max(node.branch_distance, 1e-6));
        }
      }
      node.bound = std::max(node.bound, objective);
      if (prunable(objective)) {
        report(node, objective, cuts_here, "pruned");
        break;
      }
      point = split_point(model, sol);
      const bool integral = is_integral(point);
      long added = 0;
      for (SecCut& cut : separate_sec(g, point.x, point.y, root)) {
        if (!pool_keys.insert(cut).second) continue;
        if (hooks.on_sec_cut) hooks.on_sec_cut(cut, point);
        pool.push_back(sec_row(model, cut));
        ++added;
      }
      counters.sec_cuts += added;
      cuts_here += added;

      if (added == 0) {
        if (!integral) {
          do_branch = true;
          break;
        }
        const TourCheck check = validate_tour(instance, detail::assemble_tour(g, point.x, root));
        if (!check.prize_feasible) fail(Errc::NumericalFailure, "integral point violates the quota");
        if (!incumbent || check.tour.cost() < incumbent->cost()) {
          incumbent = check.tour;
          apply_cover();
        }
        report(node, objective, cuts_here, "incumbent");
        break;
      }
      if (integral) continue;
      const double metric = incumbent && objective > 0
                                ? gap(static_cast<double>(incumbent->cost()), objective)
                                : -objective / std::max(1.0, std::abs(first_objective));
      history.push_back(metric);
      if (tailing_off(history, config.tau, config.gamma)) {
        do_branch = true;
        break;
      }
    }
    if (out_of_time && !do_branch) break;
    if (!do_branch) continue;

    std::vector<BranchCandidate> candidates;
    for (EdgeId e = 0; e < model.edge_count; ++e) {
      if (!is_integral_value(point.x[e])) candidates.push_back({model.x_col(e), point.x[e]});
    }
    if (candidates.empty()) {
      for (Vertex v = 0; v < model.vertex_count; ++v) {
        if (!is_integral_value(point.y[v])) candidates.push_back({model.y_col(v), point.y[v]});
      }
    }
    Probe probe = [&](int column, bool up) -> ProbeOutcome {
      if (time_up()) return {false, objective};
      auto fixes = node.fixes;
      fixes.push_back({column, up ? 1.0 : 0.0});
      const lp::Solution s = solve_with(fixes);
      if (s.status != lp::Status::Optimal) return {true, 0.0};
      return {false, s.objective};
    };
    const BranchDecision choice = branch_select(candidates, objective, pseudo, node.depth, config.branching, probe);
    double value = 0.0;
    for (const auto& c : candidates)
      if (c.column == choice.column) value = c.value;
    report(node, objective, cuts_here, "branched");
    for (bool up : {false, true}) {
      detail::BranchNode child;
      child.id = next_id++;
      child.depth = node.depth + 1;
      child.bound = node.bound;
      child.fixes = node.fixes;
      child.fixes.push_back({choice.column, up ? 1.0 : 0.0});
      child.branch_column = choice.column;
      child.branch_up = up;
      child.branch_distance = up ? 1.0 - value : value;
      child.parent_objective = objective;
      open.push(std::move(child));
    }
    if (out_of_time) break;
  }

  if (incumbent) {
    result.best_tour = incumbent;
    result.upper_bound = incumbent->cost();
  }
  const double ub = incumbent ? static_cast<double>(incumbent->cost()) : inf;
  double lb = ub;
  bool open_left = false;
  while (!open.empty()) {
    if (!prunable(open.top().bound)) {
      lb = std::min(lb, open.top().bound);
      open_left = true;
    }
    open.pop();
  }
  if (!open_left) {
    result.status = incumbent ? SolveStatus::Optimal : SolveStatus::Infeasible;
    result.lower_bound = ub;
  } else {
    result.status = out_of_time ? SolveStatus::Timeout : (incumbent ? SolveStatus::Feasible : SolveStatus::Timeout);
    result.lower_bound = std::min(lb, ub);
  }
  result.gap = gap(ub, result.lower_bound);
  result.elapsed = clock.seconds();
  return result;
}

}  // namespace pctsp
