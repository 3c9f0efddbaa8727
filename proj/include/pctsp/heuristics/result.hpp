#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <vector>

#include "pctsp/graph/tour.hpp"

namespace pctsp {

struct StageRecord {
  std::string stage;
  Cost cost = 0;
  Prize prize = 0;
};

struct HeuristicResult {
  std::optional<Tour> tour;
  bool feasible = false;
  std::vector<StageRecord> stage_trace;
  double elapsed = 0.0;  // seconds
  int iterations = 0;    // splices performed, where meaningful

  void record(const std::string& stage) {
    if (tour) stage_trace.push_back({stage, tour->cost(), tour->prize()});
  }
};

namespace detail {

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

inline Cost path_cost(const SparseGraph& g, const std::vector<Vertex>& path) {
  Cost c = 0;
  for (std::size_t i = 0; i + 1 < path.size(); ++i) c = checked_add(c, g.cost(path[i], path[i + 1]));
  return c;
}

inline Prize path_prize(const SparseGraph& g, const std::vector<Vertex>& path) {
  Prize p = 0;
  for (Vertex v : path) p = checked_add(p, g.prize(v));
  return p;
}

inline HeuristicResult make_result(const Instance& instance, Tour tour) {
  HeuristicResult r;
  r.feasible = tour.prize() >= instance.quota();
  r.tour = std::move(tour);
  return r;
}

}  // namespace detail
}  // namespace pctsp
