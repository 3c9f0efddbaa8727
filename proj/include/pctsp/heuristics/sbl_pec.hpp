#pragma once

#include <optional>
#include <string>

#include "pctsp/heuristics/path_collapse.hpp"
#include "pctsp/heuristics/path_extension.hpp"
#include "pctsp/heuristics/sbl.hpp"

namespace pctsp {

struct PecOptions {
  int max_step = kMaxStep;
  ClosingRule closing = ClosingRule::EdgeToStart;
};

namespace detail {

// Shared extend-then-collapse loop. Repairs feasibility with criterion A over
// steps 1..max_step (stopping at the first feasible tour), collapses, then
// alternates criterion-B extension and collapse per step keeping the best.
inline HeuristicResult extend_and_collapse(const Instance& instance, HeuristicResult result, int max_step,
                                           bool single_vertex, const CollapseOptions& collapse) {
  auto adopt = [&](const HeuristicResult& stage, const std::string& name) {
    result.tour = stage.tour;
    result.feasible = stage.feasible;
    result.record(name);
  };

  if (!result.feasible) {
    for (int step = 1; step <= max_step && !result.feasible; ++step) {
      ExtensionOptions ext{step, ExtensionCriterion::UntilFeasible, single_vertex};
      adopt(path_extend(instance, *result.tour, ext), "PE-A/" + std::to_string(step));
    }
    if (!result.feasible) return result;
  }

  adopt(path_collapse(instance, *result.tour, collapse), "PC");
  Tour best = *result.tour;
  for (int step = 1; step <= max_step; ++step) {
    ExtensionOptions ext{step, ExtensionCriterion::BelowMeanLoss, single_vertex};
    HeuristicResult extended = path_extend(instance, best, ext);
    result.stage_trace.push_back({"PE-B/" + std::to_string(step), extended.tour->cost(), extended.tour->prize()});
    if (!extended.feasible) continue;
    HeuristicResult collapsed = path_collapse(instance, *extended.tour, collapse);
    result.stage_trace.push_back({"PC/" + std::to_string(step), collapsed.tour->cost(), collapsed.tour->prize()});
    if (collapsed.tour->cost() < best.cost()) best = *collapsed.tour;
  }
  result.tour = best;
  result.feasible = true;
  return result;
}

}  // namespace detail

/// Suurballe start, path extension for feasibility, then alternating
/// extension and collapse over every step size. Falls back to the BFS cycle
/// when no disjoint pair exists; a missing cycle yields an empty result.
inline HeuristicResult sbl_pec(const Instance& instance, const PecOptions& options = {}) {
  detail::Stopwatch clock;
  if (options.max_step < 1 || options.max_step > kMaxStep) fail(Errc::Precondition, "max_step must lie in [1, 10]");
  HeuristicResult result;
  try {
    result = sbl(instance);
  } catch (const Error& e) {
    if (e.code() != Errc::NoDisjointPair) throw;
    auto cycle = bfs_initial_cycle(instance);
    if (!cycle) {
      result.elapsed = clock.seconds();
      return result;
    }
    result = detail::make_result(instance, *cycle);
    result.record("BFS");
  }
  result = detail::extend_and_collapse(instance, std::move(result), options.max_step, false,
                                       CollapseOptions{options.closing, false});
  result.elapsed = clock.seconds();
  return result;
}

/// Baseline: first BFS cycle through the root, then single-vertex insertion
/// and two-edge collapse.
inline HeuristicResult bfs_ec(const Instance& instance) {
  detail::Stopwatch clock;
  HeuristicResult result;
  auto cycle = bfs_initial_cycle(instance);
  if (!cycle) {
    result.elapsed = clock.seconds();
    return result;
  }
  result = detail::make_result(instance, *cycle);
  result.record("BFS");
  result = detail::extend_and_collapse(instance, std::move(result), 1, true,
                                       CollapseOptions{ClosingRule::EdgeToStart, true});
  result.elapsed = clock.seconds();
  return result;
}

}  // namespace pctsp
