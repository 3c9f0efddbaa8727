#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "pctsp/graph/tour.hpp"

namespace pctsp {

enum class SolveStatus { Optimal, Feasible, Infeasible, Timeout };

inline const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Optimal: return "optimal";
    case SolveStatus::Feasible: return "feasible";
    case SolveStatus::Infeasible: return "infeasible";
    case SolveStatus::Timeout: return "timeout";
  }
  return "?";
}

struct SolveCounters {
  long pre_cuts = 0;
  long cost_cover_cuts = 0;  // includes pre_cuts
  long sec_cuts = 0;
  long nodes = 0;
  long lp_solves = 0;
};

struct SolveResult {
  SolveStatus status = SolveStatus::Infeasible;
  std::optional<Cost> upper_bound;  // cost of best_tour
  double lower_bound = 0.0;         // +inf once infeasibility is proven
  double gap = std::numeric_limits<double>::infinity();
  std::optional<Tour> best_tour;
  SolveCounters counters;
  double elapsed = 0.0;
};

/// Relative gap (ub - lb) / lb; 0 when equal, infinity when lb = 0 < ub.
inline double gap(double ub, double lb) {
  if (ub == lb) return 0.0;
  if (lb <= 0.0 || std::isinf(ub)) return std::numeric_limits<double>::infinity();
  return (ub - lb) / lb;
}

namespace detail {

inline nlohmann::json finite_or_null(double v) {
  if (std::isfinite(v)) return v;
  return nullptr;
}

}  // namespace detail

/// JSON record; non-finite numbers become null.
inline nlohmann::json to_json(const SolveResult& r, const SparseGraph& g) {
  nlohmann::json j;
  j["status"] = to_string(r.status);
  j["upper_bound"] = r.upper_bound ? nlohmann::json(*r.upper_bound) : nlohmann::json(nullptr);
  j["lower_bound"] = detail::finite_or_null(r.lower_bound);
  j["gap"] = detail::finite_or_null(r.gap);
  if (r.best_tour) {
    nlohmann::json tour = nlohmann::json::array();
    for (Vertex v : r.best_tour->vertices()) tour.push_back(g.external_id(v));
    j["best_tour"] = std::move(tour);
  } else {
    j["best_tour"] = nullptr;
  }
  j["counters"] = {{"pre_cuts", r.counters.pre_cuts},
                   {"cost_cover_cuts", r.counters.cost_cover_cuts},
                   {"sec_cuts", r.counters.sec_cuts},
                   {"nodes", r.counters.nodes},
                   {"lp_solves", r.counters.lp_solves}};
  j["elapsed"] = r.elapsed;
  return j;
}

}  // namespace pctsp
