#pragma once

#include <cmath>
#include <vector>

#include "pctsp/exact/lp.hpp"
#include "pctsp/graph/instance.hpp"

namespace pctsp {

/// Integer program over one binary per edge (columns 0..m-1) and one per
/// vertex (columns m..m+n-1). Subtour elimination rows are not part of it;
/// the solver adds them lazily.
struct IlpModel {
  Instance instance;
  int edge_count = 0;
  int vertex_count = 0;
  std::vector<double> objective;
  std::vector<lp::Row> rows;  // prize row, root row, one degree row per vertex

  int x_col(EdgeId e) const { return e; }
  int y_col(Vertex v) const { return edge_count + v; }
  int column_count() const { return edge_count + vertex_count; }
};

inline IlpModel build_model(const Instance& instance) {
  const SparseGraph& g = instance.graph();
  if (g.total_prize() < instance.quota()) {
    fail(Errc::TrivialInfeasible, "total prize is below the quota");
  }
  IlpModel model;
  model.instance = instance;
  model.edge_count = g.edge_count();
  model.vertex_count = g.vertex_count();
  model.objective.assign(static_cast<std::size_t>(model.column_count()), 0.0);
  for (EdgeId e = 0; e < g.edge_count(); ++e) model.objective[e] = static_cast<double>(g.edge(e).cost);

  lp::Row prize{{}, lp::Sense::GreaterEqual, static_cast<double>(instance.quota())};
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    if (g.prize(v) != 0) prize.terms.push_back({model.y_col(v), static_cast<double>(g.prize(v))});
  }
  model.rows.push_back(std::move(prize));
  model.rows.push_back({{{model.y_col(instance.root()), 1.0}}, lp::Sense::Equal, 1.0});
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    lp::Row degree{{}, lp::Sense::Equal, 0.0};
    for (const Arc& a : g.neighbours(v)) degree.terms.push_back({model.x_col(a.edge), 1.0});
    degree.terms.push_back({model.y_col(v), -2.0});
    model.rows.push_back(std::move(degree));
  }
  return model;
}

/// Relaxation values split into edge and vertex parts.
struct LpPoint {
  std::vector<double> x;
  std::vector<double> y;
  double objective = 0.0;
};

inline LpPoint split_point(const IlpModel& model, const lp::Solution& s) {
  LpPoint p;
  p.x.assign(s.values.begin(), s.values.begin() + model.edge_count);
  p.y.assign(s.values.begin() + model.edge_count, s.values.end());
  p.objective = s.objective;
  return p;
}

inline constexpr double kIntegralityTol = 1e-6;

inline bool is_integral_value(double v) { return std::abs(v - std::round(v)) <= kIntegralityTol; }

inline bool is_integral(const LpPoint& p) {
  for (double v : p.x)
    if (!is_integral_value(v)) return false;
  for (double v : p.y)
    if (!is_integral_value(v)) return false;
  return true;
}

}  // namespace pctsp
