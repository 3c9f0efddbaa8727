#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "pctsp/bench/record.hpp"
#include "pctsp/graph/metric.hpp"
#include "pctsp/graph/preprocess.hpp"
#include "pctsp/graph/suurballe.hpp"

namespace pctsp::bench {

/// Dataset-table columns for one instance.
struct DatasetStats {
  std::string name;
  int n = 0;
  int m = 0;
  double kappa_effective = 0.0;  // m / n
  Rational metric_surplus{0};
  Rational disjoint_ratio{0};  // D(G)
  Rational prize_ratio{1};     // prize kept by preprocessing over total prize
  Prize quota = 0;
  Prize total_prize = 0;
};

inline DatasetStats dataset_stats(const Instance& inst) {
  const SparseGraph& g = inst.graph();
  DatasetStats s;
  s.name = inst.name();
  s.n = g.vertex_count();
  s.m = g.edge_count();
  s.kappa_effective = s.n ? static_cast<double>(s.m) / s.n : 0.0;
  s.metric_surplus = metric_surplus(g);
  s.disjoint_ratio = disjoint_prize_ratio(g, inst.root());
  s.quota = inst.quota();
  s.total_prize = g.total_prize();
  try {
    s.prize_ratio = preprocess(inst).second.prize_ratio;
  } catch (const Error& e) {
    if (e.code() != Errc::RootIsolated) throw;
    const Prize kept = g.prize(inst.root());
    s.prize_ratio = s.total_prize > 0 ? Rational{kept, s.total_prize} : Rational{1};
  }
  return s;
}

inline nlohmann::json to_json(const DatasetStats& s) {
  auto rational = [](const Rational& r) { return nlohmann::json{{"value", to_double(r)}, {"exact", r.str()}}; };
  return {{"instance", s.name},
          {"n", s.n},
          {"m", s.m},
          {"kappa_effective", s.kappa_effective},
          {"metric_surplus", rational(s.metric_surplus)},
          {"disjoint_ratio", rational(s.disjoint_ratio)},
          {"prize_ratio", rational(s.prize_ratio)},
          {"quota", s.quota},
          {"total_prize", s.total_prize}};
}

inline constexpr const char* kStatsColumns = "instance,n,m,kappa_effective,metric_surplus,disjoint_ratio,prize_ratio,quota,total_prize";

inline std::string stats_csv_row(const DatasetStats& s) {
  return detail::csv_quote(s.name) + ',' + std::to_string(s.n) + ',' + std::to_string(s.m) + ',' +
         format_double(s.kappa_effective) + ',' + format_double(to_double(s.metric_surplus)) + ',' +
         format_double(to_double(s.disjoint_ratio)) + ',' + format_double(to_double(s.prize_ratio)) + ',' +
         std::to_string(s.quota) + ',' + std::to_string(s.total_prize);
}

}  // namespace pctsp::bench
