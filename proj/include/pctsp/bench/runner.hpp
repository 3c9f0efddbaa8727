#pragma once

#include <algorithm>
#include <cctype>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "pctsp/bench/record.hpp"
#include "pctsp/exact/branch_and_cut.hpp"
#include "pctsp/exact/oracle.hpp"
#include "pctsp/graph/preprocess.hpp"
#include "pctsp/heuristics/sbl_pec.hpp"

namespace pctsp::bench {

enum class Algorithm { Sbl, BfsEc, SblPec, BcNone, BcSpcc, BcDpcc, Oracle };

inline const char* to_string(Algorithm a) {
  switch (a) {
    case Algorithm::Sbl: return "SBL";
    case Algorithm::BfsEc: return "BFS-EC";
    case Algorithm::SblPec: return "SBL-PEC";
    case Algorithm::BcNone: return "BC-none";
    case Algorithm::BcSpcc: return "BC-SPCC";
    case Algorithm::BcDpcc: return "BC-DPCC";
    case Algorithm::Oracle: return "ORACLE";
  }
  return "?";
}

inline constexpr Algorithm kAllAlgorithms[] = {Algorithm::Sbl,    Algorithm::BfsEc,  Algorithm::SblPec, Algorithm::BcNone,
                                               Algorithm::BcSpcc, Algorithm::BcDpcc, Algorithm::Oracle};

/// Case-insensitive; accepts the record ids and lower-case short forms
/// (sbl, bfs-ec, sbl-pec, bc-none, bc-spcc, bc-dpcc, oracle).
inline Algorithm parse_algorithm(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  for (Algorithm a : kAllAlgorithms) {
    std::string id = to_string(a);
    std::transform(id.begin(), id.end(), id.begin(), [](unsigned char c) { return std::tolower(c); });
    if (s == id) return a;
  }
  fail(Errc::ParseError, "unknown algorithm '" + s + "'");
}

inline bool is_heuristic(Algorithm a) {
  return a == Algorithm::Sbl || a == Algorithm::BfsEc || a == Algorithm::SblPec;
}

inline CostCoverMode cover_of(Algorithm a) {
  if (a == Algorithm::BcSpcc) return CostCoverMode::Spcc;
  if (a == Algorithm::BcDpcc) return CostCoverMode::Dpcc;
  return CostCoverMode::None;
}

struct RunOptions {
  SolverConfig solver;  // cost_cover is overridden per algorithm
  std::uint64_t seed = 0;
  bool emit_tour = false;
  int oracle_limit = 14;
  /// Lower bound used for heuristic GAP; NaN leaves GAP undefined.
  double heuristic_lower_bound = std::numeric_limits<double>::quiet_NaN();
  std::function<void(const NodeTrace&)> on_node;
};

namespace detail {

inline RunRecord base_record(const Instance& inst, Algorithm a, std::uint64_t seed) {
  RunRecord r;
  r.instance = inst.name();
  r.algorithm = to_string(a);
  r.seed = seed;
  r.quota = inst.quota();
  r.n = inst.graph().vertex_count();
  r.m = inst.graph().edge_count();
  const auto& meta = inst.metadata();
  if (meta.is_object()) {
    if (meta.contains("kappa") && meta["kappa"].is_number()) r.kappa = meta["kappa"].get<long>();
    if (meta.contains("alpha") && meta["alpha"].is_number()) r.alpha = meta["alpha"].get<double>();
  }
  return r;
}

inline void fill_tour(RunRecord& r, const SparseGraph& g, const Tour& t, bool emit) {
  if (!emit) return;
  for (Vertex v : t.vertices()) r.tour.push_back(g.external_id(v));
}

// Preprocessed instance, or nullopt when the root is isolated.
inline std::optional<Instance> reduce(const Instance& inst) {
  try {
    return preprocess(inst).first;
  } catch (const Error& e) {
    if (e.code() != Errc::RootIsolated) throw;
    return std::nullopt;
  }
}

}  // namespace detail

/// Runs one heuristic on the preprocessed instance. Status: feasible,
/// infeasible_heuristic (a tour below the quota) or no_tour.
inline RunRecord run_heuristic(const Instance& inst, Algorithm a, const RunOptions& opt = {}) {
  RunRecord r = detail::base_record(inst, a, opt.seed);
  pctsp::detail::Stopwatch clock;
  const auto reduced = detail::reduce(inst);
  HeuristicResult h;
  if (reduced) {
    try {
      switch (a) {
        case Algorithm::Sbl: h = sbl(*reduced); break;
        case Algorithm::BfsEc: h = bfs_ec(*reduced); break;
        case Algorithm::SblPec: h = sbl_pec(*reduced); break;
        default: fail(Errc::Precondition, "not a heuristic");
      }
    } catch (const Error& e) {
      if (e.code() != Errc::NoDisjointPair) throw;
      h = {};
    }
  }
  r.time = clock.seconds();
  r.lower_bound = opt.heuristic_lower_bound;
  if (!h.tour) {
    r.status = "no_tour";
    return r;
  }
  if (!h.feasible) {
    r.status = "infeasible_heuristic";
    return r;
  }
  r.status = "feasible";
  r.cost = h.tour->cost();
  r.prize = h.tour->prize();
  r.gap = std::isnan(opt.heuristic_lower_bound) ? opt.heuristic_lower_bound
                                                : gap(static_cast<double>(*r.cost), opt.heuristic_lower_bound);
  detail::fill_tour(r, reduced->graph(), *h.tour, opt.emit_tour);
  return r;
}

/// Branch & cut on the preprocessed instance with the algorithm's cost-cover
/// mode. An isolated root is reported as infeasible.
inline RunRecord run_solver(const Instance& inst, Algorithm a, const RunOptions& opt = {}) {
  RunRecord r = detail::base_record(inst, a, opt.seed);
  pctsp::detail::Stopwatch clock;
  const auto reduced = detail::reduce(inst);
  if (!reduced) {
    r.status = "infeasible";
    r.lower_bound = std::numeric_limits<double>::infinity();
    r.gap = 0.0;
    r.pre_cuts = 0;
    r.time = clock.seconds();
    return r;
  }
  SolverConfig cfg = opt.solver;
  cfg.cost_cover = cover_of(a);
  cfg.seed = opt.seed;
  SolverHooks hooks;
  hooks.on_node = opt.on_node;
  const SolveResult s = branch_and_cut(*reduced, cfg, hooks);
  r.time = clock.seconds();
  r.status = to_string(s.status);
  r.lower_bound = s.lower_bound;
  r.gap = s.gap;
  r.pre_cuts = s.counters.pre_cuts;
  r.nodes = s.counters.nodes;
  if (s.best_tour) {
    r.cost = s.best_tour->cost();
    r.prize = s.best_tour->prize();
    detail::fill_tour(r, reduced->graph(), *s.best_tour, opt.emit_tour);
  }
  return r;
}

/// Exhaustive search on the preprocessed instance; throws TooLarge above the limit.
inline RunRecord run_oracle(const Instance& inst, const RunOptions& opt = {}) {
  RunRecord r = detail::base_record(inst, Algorithm::Oracle, opt.seed);
  pctsp::detail::Stopwatch clock;
  const auto reduced = detail::reduce(inst);
  if (!reduced) {
    r.status = "infeasible";
    r.lower_bound = std::numeric_limits<double>::infinity();
    r.gap = 0.0;
    r.time = clock.seconds();
    return r;
  }
  const OracleResult o = oracle_solve(*reduced, opt.oracle_limit);
  r.time = clock.seconds();
  r.status = to_string(o.solve.status);
  r.lower_bound = o.solve.lower_bound;
  r.gap = o.solve.gap;
  if (o.solve.best_tour) {
    r.cost = o.solve.best_tour->cost();
    r.prize = o.solve.best_tour->prize();
    detail::fill_tour(r, reduced->graph(), *o.solve.best_tour, opt.emit_tour);
  }
  return r;
}

inline RunRecord run_one(const Instance& inst, Algorithm a, const RunOptions& opt = {}) {
  if (is_heuristic(a)) return run_heuristic(inst, a, opt);
  if (a == Algorithm::Oracle) return run_oracle(inst, opt);
  return run_solver(inst, a, opt);
}

/// Lower bound for heuristic GAP: DPCC branch & cut under a time budget.
inline double heuristic_lower_bound(const Instance& inst, double budget_seconds, long node_budget = 0) {
  RunOptions opt;
  opt.solver.time_limit = budget_seconds;
  opt.solver.max_nodes = node_budget;
  return run_solver(inst, Algorithm::BcDpcc, opt).lower_bound;
}

}  // namespace pctsp::bench
