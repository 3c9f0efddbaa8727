#pragma once

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "pctsp/graph/error.hpp"
#include "pctsp/graph/types.hpp"

namespace pctsp::bench {

inline constexpr const char* kCsvHeaderComment = "# pctsp-bench-csv v1";
inline constexpr const char* kCsvColumns =
    "instance,algorithm,status,cost,prize,time,gap,lower_bound,pre_cuts,nodes,seed,kappa,alpha,quota,n,m";

/// One algorithm run on one instance. Optional fields are empty in CSV.
struct RunRecord {
  std::string instance;
  std::string algorithm;  // SBL | BFS-EC | SBL-PEC | BC-none | BC-SPCC | BC-DPCC | ORACLE
  std::string status;
  std::optional<Cost> cost;  // present iff a prize-feasible tour was found
  std::optional<Prize> prize;
  double time = 0.0;
  double gap = std::numeric_limits<double>::quiet_NaN();  // NaN when no LB source or no tour
  double lower_bound = std::numeric_limits<double>::quiet_NaN();
  std::optional<long> pre_cuts;
  long nodes = 0;
  std::uint64_t seed = 0;
  std::optional<long> kappa;
  std::optional<double> alpha;
  Prize quota = 0;
  int n = 0;
  int m = 0;
  std::vector<std::int64_t> tour;  // external ids, only when requested

  bool feasible() const { return cost.has_value(); }
  bool optimal() const { return status == "optimal"; }
};

/// Shortest text that reads back to the same double; inf / -inf / nan literal.
inline std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

inline double parse_double(const std::string& s) {
  if (s.empty() || s == "nan") return std::numeric_limits<double>::quiet_NaN();
  if (s == "inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0') fail(Errc::ParseError, "bad number '" + s + "'");
  return v;
}

namespace detail {

inline std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

template <class T>
std::string opt_text(const std::optional<T>& v) {
  if (!v) return "";
  if constexpr (std::is_floating_point_v<T>) {
    return format_double(*v);
  } else {
    return std::to_string(*v);
  }
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        out.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        out.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.emplace_back();
    } else if (c != '\r') {
      out.back() += c;
    }
  }
  return out;
}

}  // namespace detail

inline std::string csv_row(const RunRecord& r) {
  std::ostringstream os;
  os << detail::csv_quote(r.instance) << ',' << detail::csv_quote(r.algorithm) << ',' << r.status << ','
     << detail::opt_text(r.cost) << ',' << detail::opt_text(r.prize) << ',' << format_double(r.time) << ','
     << format_double(r.gap) << ',' << format_double(r.lower_bound) << ',' << detail::opt_text(r.pre_cuts) << ','
     << r.nodes << ',' << r.seed << ',' << detail::opt_text(r.kappa) << ',' << detail::opt_text(r.alpha) << ','
     << r.quota << ',' << r.n << ',' << r.m;
  return os.str();
}

inline std::string to_csv(const std::vector<RunRecord>& records) {
  std::string out = std::string(kCsvHeaderComment) + "\r\n" + kCsvColumns + "\r\n";
  for (const auto& r : records) out += csv_row(r) + "\r\n";
  return out;
}

/// Inverse of to_csv (tours are not stored in CSV).
inline std::vector<RunRecord> from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<RunRecord> out;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      if (line != kCsvColumns) fail(Errc::ParseError, "unexpected CSV header");
      header_seen = true;
      continue;
    }
    const auto f = detail::split_csv_line(line);
    if (f.size() != 16) fail(Errc::ParseError, "CSV row has " + std::to_string(f.size()) + " fields");
    RunRecord r;
    r.instance = f[0];
    r.algorithm = f[1];
    r.status = f[2];
    if (!f[3].empty()) r.cost = std::stoll(f[3]);
    if (!f[4].empty()) r.prize = std::stoll(f[4]);
    r.time = parse_double(f[5]);
    r.gap = parse_double(f[6]);
    r.lower_bound = parse_double(f[7]);
    if (!f[8].empty()) r.pre_cuts = std::stol(f[8]);
    r.nodes = std::stol(f[9]);
    r.seed = std::stoull(f[10]);
    if (!f[11].empty()) r.kappa = std::stol(f[11]);
    if (!f[12].empty()) r.alpha = parse_double(f[12]);
    r.quota = std::stoll(f[13]);
    r.n = std::stoi(f[14]);
    r.m = std::stoi(f[15]);
    out.push_back(std::move(r));
  }
  return out;
}

inline nlohmann::json to_json(const RunRecord& r) {
  auto num = [](double v) -> nlohmann::json {
    if (std::isfinite(v)) return v;
    if (std::isnan(v)) return nullptr;
    return v > 0 ? "inf" : "-inf";
  };
  nlohmann::json j = {{"instance", r.instance},
                      {"algorithm", r.algorithm},
                      {"status", r.status},
                      {"cost", r.cost ? nlohmann::json(*r.cost) : nlohmann::json(nullptr)},
                      {"prize", r.prize ? nlohmann::json(*r.prize) : nlohmann::json(nullptr)},
                      {"time", r.time},
                      {"gap", num(r.gap)},
                      {"lower_bound", num(r.lower_bound)},
                      {"pre_cuts", r.pre_cuts ? nlohmann::json(*r.pre_cuts) : nlohmann::json(nullptr)},
                      {"nodes", r.nodes},
                      {"seed", r.seed},
                      {"quota", r.quota},
                      {"n", r.n},
                      {"m", r.m}};
  if (!r.tour.empty()) j["tour"] = r.tour;
  return j;
}

}  // namespace pctsp::bench
