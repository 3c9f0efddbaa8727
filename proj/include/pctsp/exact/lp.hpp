#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>
#include <vector>

#include "pctsp/graph/error.hpp"

namespace pctsp::lp {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class Sense { LessEqual, GreaterEqual, Equal };

struct Row {
  std::vector<std::pair<int, double>> terms;  // (column, coefficient)
  Sense sense = Sense::LessEqual;
  double rhs = 0.0;
};

/// min c.x subject to rows and lower <= x <= upper (finite bounds).
struct Problem {
  std::vector<double> objective;
  std::vector<double> lower;
  std::vector<double> upper;
  std::vector<Row> rows;

  int column_count() const { return static_cast<int>(objective.size()); }
};

enum class Status { Optimal, Infeasible, Unbounded };

struct Solution {
  Status status = Status::Infeasible;
  std::vector<double> values;
  double objective = 0.0;
  int iterations = 0;
};

struct Options {
  double feasibility_tol = 1e-9;
  double optimality_tol = 1e-9;
  double pivot_tol = 1e-9;
  /// Bland's rule takes over after this many iterations times (rows + cols).
  int bland_factor = 10;
  /// Hard cap, same unit, before giving up with NumericalFailure.
  int iteration_factor = 60;
};

namespace detail {

// Dense-tableau bounded-variable simplex. Columns: structurals, one slack per
// row (a.x + s = b), one artificial per row. Slack bounds encode the sense.
class Tableau {
 public:
  Tableau(const Problem& p, const Options& opt) : opt_(opt) {
    n_ = p.column_count();
    m_ = static_cast<int>(p.rows.size());
    cols_ = n_ + 2 * m_;
    lower_.assign(cols_, 0.0);
    upper_.assign(cols_, 0.0);
    for (int j = 0; j < n_; ++j) {
      lower_[j] = p.lower[j];
      upper_[j] = p.upper[j];
      if (!std::isfinite(lower_[j]) || !std::isfinite(upper_[j])) {
        fail(Errc::Precondition, "structural variables must be box-bounded");
      }
      if (lower_[j] > upper_[j] + opt_.feasibility_tol) infeasible_bounds_ = true;
    }
    value_.assign(cols_, 0.0);
    at_upper_.assign(cols_, 0);
    basic_row_.assign(cols_, -1);
    for (int j = 0; j < n_; ++j) value_[j] = lower_[j];

    table_.assign(static_cast<std::size_t>(m_) * cols_, 0.0);
    beta_.assign(m_, 0.0);
    basis_.assign(m_, 0);
    for (int i = 0; i < m_; ++i) {
      const Row& row = p.rows[i];
      const int slack = n_ + i;
      const int art = n_ + m_ + i;
      switch (row.sense) {
        case Sense::LessEqual: lower_[slack] = 0.0; upper_[slack] = kInf; break;
        case Sense::GreaterEqual: lower_[slack] = -kInf; upper_[slack] = 0.0; break;
        case Sense::Equal: lower_[slack] = 0.0; upper_[slack] = 0.0; break;
      }
      double residual = row.rhs;
      for (auto [j, a] : row.terms) {
        at(i, j) += a;
        residual -= a * value_[j];
      }
      at(i, slack) = 1.0;
      double slack_value = std::clamp(residual, lower_[slack], upper_[slack]);
      const double gap = residual - slack_value;
      if (std::abs(gap) <= opt_.feasibility_tol) {
        basis_[i] = slack;
        beta_[i] = residual;
        lower_[art] = upper_[art] = 0.0;
      } else {
        // Artificial absorbs the gap with a sign that keeps it non-negative.
        const double sign = gap > 0 ? 1.0 : -1.0;
        at(i, art) = sign;
        value_[slack] = slack_value;
        at_upper_[slack] = slack_value == upper_[slack] && slack_value != lower_[slack];
        lower_[art] = 0.0;
        upper_[art] = kInf;
        scale_row(i, sign);
        basis_[i] = art;
        beta_[i] = std::abs(gap);
        needs_phase_one_ = true;
      }
      basic_row_[basis_[i]] = i;
    }
  }

  Solution solve(const std::vector<double>& objective) {
    Solution out;
    if (infeasible_bounds_) {
      out.status = Status::Infeasible;
      return out;
    }
    if (needs_phase_one_) {
      std::vector<double> phase_one(cols_, 0.0);
      for (int i = 0; i < m_; ++i) phase_one[n_ + m_ + i] = 1.0;
      run(phase_one);
      double infeasibility = 0.0;
      for (int i = 0; i < m_; ++i) {
        if (basis_[i] >= n_ + m_) infeasibility += beta_[i];
      }
      if (infeasibility > 1e-7) {
        out.status = Status::Infeasible;
        out.iterations = iterations_;
        return out;
      }
    }
    for (int i = 0; i < m_; ++i) {
      const int art = n_ + m_ + i;
      lower_[art] = upper_[art] = 0.0;
      if (basic_row_[art] < 0) value_[art] = 0.0;
    }
    std::vector<double> costs(cols_, 0.0);
    std::copy(objective.begin(), objective.end(), costs.begin());
    if (!run(costs)) {
      out.status = Status::Unbounded;
      out.iterations = iterations_;
      return out;
    }
    out.status = Status::Optimal;
    out.values.assign(n_, 0.0);
    for (int j = 0; j < n_; ++j) {
      const int r = basic_row_[j];
      double v = r >= 0 ? beta_[r] : value_[j];
      v = std::clamp(v, lower_[j], upper_[j]);
      out.values[j] = v;
      out.objective += objective[j] * v;
    }
    out.iterations = iterations_;
    return out;
  }

 private:
  double& at(int i, int j) { return table_[static_cast<std::size_t>(i) * cols_ + j]; }

  void scale_row(int i, double factor) {
    for (int j = 0; j < cols_; ++j) at(i, j) *= factor;
  }

  // Returns false when unbounded.
  bool run(const std::vector<double>& costs) {
    std::vector<double> reduced(costs);
    for (int i = 0; i < m_; ++i) {
      const double cb = costs[basis_[i]];
      if (cb == 0.0) continue;
      for (int j = 0; j < cols_; ++j) reduced[j] -= cb * at(i, j);
    }
    const long long bland_after = static_cast<long long>(opt_.bland_factor) * (m_ + cols_);
    const long long cap = static_cast<long long>(opt_.iteration_factor) * (m_ + cols_) + 1000;
    long long local = 0;
    for (;;) {
      const bool bland = local >= bland_after;
      if (local++ > cap) fail(Errc::NumericalFailure, "simplex iteration cap reached");
      ++iterations_;

      int entering = -1;
      double best = 0.0;
      for (int j = 0; j < cols_; ++j) {
        if (basic_row_[j] >= 0 || upper_[j] - lower_[j] <= 0.0) continue;
        const double d = reduced[j];
        double gain = 0.0;
        if (!at_upper_[j] && d < -opt_.optimality_tol && upper_[j] > value_[j]) gain = -d;
        if (at_upper_[j] && d > opt_.optimality_tol) gain = d;
        if (gain <= 0.0) continue;
        if (bland) {
          entering = j;
          break;
        }
        if (gain > best) {
          best = gain;
          entering = j;
        }
      }
      if (entering < 0) return true;

      const double dir = at_upper_[entering] ? -1.0 : 1.0;
      double step = upper_[entering] - lower_[entering];
      int leave_row = -1;
      double leave_alpha = 0.0;
      for (int i = 0; i < m_; ++i) {
        const double alpha = at(i, entering) * dir;
        if (std::abs(alpha) <= opt_.pivot_tol) continue;
        const int b = basis_[i];
        double limit = kInf;
        if (alpha > 0 && std::isfinite(lower_[b])) limit = std::max(0.0, (beta_[i] - lower_[b]) / alpha);
        if (alpha < 0 && std::isfinite(upper_[b])) limit = std::max(0.0, (upper_[b] - beta_[i]) / -alpha);
        if (!std::isfinite(limit)) continue;
        bool take = false;
        if (limit < step - 1e-12) {
          take = true;
        } else if (limit <= step + 1e-12 && leave_row >= 0) {
          take = bland ? basis_[i] < basis_[leave_row] : std::abs(alpha) > std::abs(leave_alpha);
        } else if (limit <= step + 1e-12 && leave_row < 0 && !std::isfinite(upper_[entering] - lower_[entering])) {
          take = true;
        }
        if (take) {
          step = limit;
          leave_row = i;
          leave_alpha = alpha;
        }
      }
      if (!std::isfinite(step)) return false;

      for (int i = 0; i < m_; ++i) beta_[i] -= at(i, entering) * dir * step;
      if (leave_row < 0) {
        // Bound flip of the entering variable.
        at_upper_[entering] = !at_upper_[entering];
        value_[entering] = at_upper_[entering] ? upper_[entering] : lower_[entering];
        continue;
      }

      const int leaving = basis_[leave_row];
      const bool to_lower = leave_alpha > 0;
      value_[leaving] = to_lower ? lower_[leaving] : upper_[leaving];
      at_upper_[leaving] = !to_lower;
      basic_row_[leaving] = -1;

      const double entering_value = value_[entering] + dir * step;
      basis_[leave_row] = entering;
      basic_row_[entering] = leave_row;
      at_upper_[entering] = 0;
      beta_[leave_row] = entering_value;

      const double pivot = at(leave_row, entering);
      double* prow = &table_[static_cast<std::size_t>(leave_row) * cols_];
      for (int j = 0; j < cols_; ++j) prow[j] /= pivot;
      for (int i = 0; i < m_; ++i) {
        if (i == leave_row) continue;
        const double f = at(i, entering);
        if (f == 0.0) continue;
        double* row = &table_[static_cast<std::size_t>(i) * cols_];
        for (int j = 0; j < cols_; ++j) row[j] -= f * prow[j];
        row[entering] = 0.0;
      }
      const double fr = reduced[entering];
      if (fr != 0.0) {
        for (int j = 0; j < cols_; ++j) reduced[j] -= fr * prow[j];
        reduced[entering] = 0.0;
      }
    }
  }

  Options opt_;
  int n_ = 0;
  int m_ = 0;
  int cols_ = 0;
  std::vector<double> table_;
  std::vector<double> beta_;
  std::vector<int> basis_;
  std::vector<int> basic_row_;
  std::vector<double> lower_;
  std::vector<double> upper_;
  std::vector<double> value_;
  std::vector<char> at_upper_;
  bool needs_phase_one_ = false;
  bool infeasible_bounds_ = false;
  int iterations_ = 0;
};

}  // namespace detail

/// Optimal basic solution of the relaxation, or Infeasible / Unbounded.
/// Throws NumericalFailure when the iteration cap is hit.
inline Solution solve(const Problem& problem, const Options& options = {}) {
  if (problem.lower.size() != problem.objective.size() || problem.upper.size() != problem.objective.size()) {
    fail(Errc::Precondition, "bound vectors must match the column count");
  }
  detail::Tableau tableau(problem, options);
  return tableau.solve(problem.objective);
}

/// Largest violation of any row or bound by `x`.
inline double max_violation(const Problem& p, const std::vector<double>& x) {
  double worst = 0.0;
  for (int j = 0; j < p.column_count(); ++j) {
    worst = std::max({worst, p.lower[j] - x[j], x[j] - p.upper[j]});
  }
  for (const Row& row : p.rows) {
    double lhs = 0.0;
    for (auto [j, a] : row.terms) lhs += a * x[j];
    if (row.sense != Sense::GreaterEqual) worst = std::max(worst, lhs - row.rhs);
    if (row.sense != Sense::LessEqual) worst = std::max(worst, row.rhs - lhs);
  }
  return worst;
}

}  // namespace pctsp::lp
