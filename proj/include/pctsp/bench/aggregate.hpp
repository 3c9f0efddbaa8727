#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <limits>
#include <map>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "pctsp/bench/record.hpp"

namespace pctsp::bench {

enum class GroupBy { Kappa, Alpha, Quota, None };

inline GroupBy parse_group_by(const std::string& s) {
  if (s == "kappa") return GroupBy::Kappa;
  if (s == "alpha") return GroupBy::Alpha;
  if (s == "quota") return GroupBy::Quota;
  if (s == "none") return GroupBy::None;
  fail(Errc::ParseError, "unknown group key '" + s + "'");
}

inline const char* to_string(GroupBy g) {
  switch (g) {
    case GroupBy::Kappa: return "kappa";
    case GroupBy::Alpha: return "alpha";
    case GroupBy::Quota: return "quota";
    case GroupBy::None: return "none";
  }
  return "?";
}

inline std::string group_key(const RunRecord& r, GroupBy by) {
  switch (by) {
    case GroupBy::Kappa: return r.kappa ? std::to_string(*r.kappa) : "unknown";
    case GroupBy::Alpha: return r.alpha ? format_double(*r.alpha) : "unknown";
    case GroupBy::Quota: return std::to_string(r.quota);
    case GroupBy::None: return "all";
  }
  return "all";
}

struct AggregateRow {
  std::string group;
  std::string algorithm;
  long runs = 0;
  double mean_gap = std::numeric_limits<double>::quiet_NaN();
  long gap_undefined = 0;
  double mean_time = std::numeric_limits<double>::quiet_NaN();
  long feas = 0;
  long opt = 0;
  double mean_pre_cuts = std::numeric_limits<double>::quiet_NaN();
  long pre_cuts_undefined = 0;

  friend bool operator==(const AggregateRow&, const AggregateRow&) = default;
};

namespace detail {

// Numeric keys sort by value, the rest after them by text.
struct GroupLess {
  bool operator()(const std::string& a, const std::string& b) const {
    char* ea = nullptr;
    char* eb = nullptr;
    const double da = std::strtod(a.c_str(), &ea);
    const double db = std::strtod(b.c_str(), &eb);
    const bool na = !a.empty() && *ea == '\0';
    const bool nb = !b.empty() && *eb == '\0';
    return std::make_tuple(!na, na ? da : 0.0, a) < std::make_tuple(!nb, nb ? db : 0.0, b);
  }
};

}  // namespace detail

/// One row per (group, algorithm). GAP means cover finite values only, the
/// rest are counted as undefined; an empty mean is NaN.
inline std::vector<AggregateRow> aggregate(const std::vector<RunRecord>& records, GroupBy by) {
  std::vector<std::string> algorithms;
  for (const auto& r : records)
    if (std::find(algorithms.begin(), algorithms.end(), r.algorithm) == algorithms.end()) algorithms.push_back(r.algorithm);

  struct Acc {
    long runs = 0, gap_n = 0, gap_undef = 0, feas = 0, opt = 0, pc_n = 0, pc_undef = 0;
    double gap_sum = 0, time_sum = 0, pc_sum = 0;
  };
  std::map<std::string, std::map<std::string, Acc>, detail::GroupLess> table;
  for (const auto& r : records) {
    Acc& a = table[group_key(r, by)][r.algorithm];
    ++a.runs;
    a.time_sum += r.time;
    if (std::isfinite(r.gap)) {
      a.gap_sum += r.gap;
      ++a.gap_n;
    } else {
      ++a.gap_undef;
    }
    if (r.feasible()) ++a.feas;
    if (r.optimal()) ++a.opt;
    if (r.pre_cuts) {
      a.pc_sum += static_cast<double>(*r.pre_cuts);
      ++a.pc_n;
    } else {
      ++a.pc_undef;
    }
  }
  constexpr double nan = std::numeric_limits<double>::quiet_NaN();
  std::vector<AggregateRow> out;
  for (const auto& [group, by_alg] : table) {
    for (const auto& alg : algorithms) {
      auto it = by_alg.find(alg);
      if (it == by_alg.end()) continue;
      const Acc& a = it->second;
      AggregateRow row;
      row.group = group;
      row.algorithm = alg;
      row.runs = a.runs;
      row.mean_gap = a.gap_n ? a.gap_sum / static_cast<double>(a.gap_n) : nan;
      row.gap_undefined = a.gap_undef;
      row.mean_time = a.runs ? a.time_sum / static_cast<double>(a.runs) : nan;
      row.feas = a.feas;
      row.opt = a.opt;
      row.mean_pre_cuts = a.pc_n ? a.pc_sum / static_cast<double>(a.pc_n) : nan;
      row.pre_cuts_undefined = a.pc_undef;
      out.push_back(row);
    }
  }
  return out;
}

inline std::string aggregate_csv(const std::vector<AggregateRow>& rows, GroupBy by) {
  std::ostringstream os;
  os << kCsvHeaderComment << " aggregate\r\n";
  os << to_string(by) << ",algorithm,runs,mean_gap,gap_undefined,mean_time,feas,opt,mean_pre_cuts,pre_cuts_undefined\r\n";
  for (const auto& r : rows) {
    os << detail::csv_quote(r.group) << ',' << detail::csv_quote(r.algorithm) << ',' << r.runs << ','
       << format_double(r.mean_gap) << ',' << r.gap_undefined << ',' << format_double(r.mean_time) << ',' << r.feas
       << ',' << r.opt << ',' << format_double(r.mean_pre_cuts) << ',' << r.pre_cuts_undefined << "\r\n";
  }
  return os.str();
}

namespace detail {

inline std::string fixed(double v, int digits) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

}  // namespace detail

/// One markdown table per metric: group rows, algorithm columns.
inline std::string aggregate_markdown(const std::vector<AggregateRow>& rows, GroupBy by) {
  std::vector<std::string> groups;
  std::vector<std::string> algorithms;
  for (const auto& r : rows) {
    if (std::find(groups.begin(), groups.end(), r.group) == groups.end()) groups.push_back(r.group);
    if (std::find(algorithms.begin(), algorithms.end(), r.algorithm) == algorithms.end()) algorithms.push_back(r.algorithm);
  }
  auto cell = [&](const std::string& g, const std::string& a) -> const AggregateRow* {
    for (const auto& r : rows)
      if (r.group == g && r.algorithm == a) return &r;
    return nullptr;
  };
  using Metric = std::function<std::string(const AggregateRow&)>;
  const std::vector<std::pair<std::string, Metric>> metrics = {
      {"mean GAP (undefined)",
       [](const AggregateRow& r) { return detail::fixed(r.mean_gap, 4) + " (" + std::to_string(r.gap_undefined) + ")"; }},
      {"mean TIME (s)", [](const AggregateRow& r) { return detail::fixed(r.mean_time, 3); }},
      {"FEAS", [](const AggregateRow& r) { return std::to_string(r.feas) + "/" + std::to_string(r.runs); }},
      {"OPT", [](const AggregateRow& r) { return std::to_string(r.opt) + "/" + std::to_string(r.runs); }},
      {"mean PRE-CUTS", [](const AggregateRow& r) { return detail::fixed(r.mean_pre_cuts, 2); }},
  };
  std::ostringstream os;
  for (const auto& [title, metric] : metrics) {
    os << "### " << title << "\n\n| " << to_string(by);
    for (const auto& a : algorithms) os << " | " << a;
    os << " |\n|---";
    for (std::size_t i = 0; i < algorithms.size(); ++i) os << "|---";
    os << "|\n";
    for (const auto& g : groups) {
      os << "| " << g;
      for (const auto& a : algorithms) {
        const AggregateRow* r = cell(g, a);
        os << " | " << (r ? metric(*r) : std::string("-"));
      }
      os << " |\n";
    }
    os << "\n";
  }
  return os.str();
}

inline nlohmann::json to_json(const AggregateRow& r) {
  auto num = [](double v) -> nlohmann::json { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr); };
  return {{"group", r.group},       {"algorithm", r.algorithm},   {"runs", r.runs},
          {"mean_gap", num(r.mean_gap)}, {"gap_undefined", r.gap_undefined}, {"mean_time", num(r.mean_time)},
          {"feas", r.feas},         {"opt", r.opt},               {"mean_pre_cuts", num(r.mean_pre_cuts)},
          {"pre_cuts_undefined", r.pre_cuts_undefined}};
}

}  // namespace pctsp::bench
