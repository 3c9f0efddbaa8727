#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "pctsp/instances/generators.hpp"
#include "pctsp/instances/pollution.hpp"

namespace pctsp {

/// One benchmark instance recipe. `base` is "random:<n>" (uniform points),
/// "pollution:<n>" (synthetic road network; kappa and modes unused) or a
/// TSPLIB file path.
struct GenerationSpec {
  std::string name;
  std::string base;
  int kappa = 5;
  PrizeMode prize = PrizeMode::One;
  CostMode cost = CostMode::Mst;
  double alpha = 0.5;
  std::uint64_t seed = 0;
};

inline PrizeMode parse_prize_mode(const std::string& s) {
  if (s == "one" || s == "ONE") return PrizeMode::One;
  if (s == "mod" || s == "MOD") return PrizeMode::Mod;
  if (s == "dist" || s == "DIST") return PrizeMode::Dist;
  fail(Errc::ParseError, "unknown prize mode " + s);
}

inline CostMode parse_cost_mode(const std::string& s) {
  if (s == "mst" || s == "MST") return CostMode::Mst;
  if (s == "euc" || s == "EUC") return CostMode::Euc;
  fail(Errc::ParseError, "unknown cost mode " + s);
}

inline std::string default_name(const GenerationSpec& s) {
  std::string base = s.base;
  for (char& c : base)
    if (c == ':' || c == '/' || c == '.') c = '-';
  std::ostringstream os;
  os << base << "_k" << s.kappa << "_" << to_string(s.prize) << "_" << to_string(s.cost) << "_a" << s.alpha << "_s"
     << s.seed;
  return os.str();
}

inline GenerationSpec spec_from_json(const nlohmann::json& j) {
  try {
    GenerationSpec s;
    s.base = j.at("base").get<std::string>();
    s.kappa = j.value("kappa", 5);
    s.prize = parse_prize_mode(j.value("prize", std::string("one")));
    s.cost = parse_cost_mode(j.value("cost", std::string("mst")));
    s.alpha = j.value("alpha", 0.5);
    s.seed = j.value("seed", std::uint64_t{0});
    s.name = j.value("name", default_name(s));
    return s;
  } catch (const nlohmann::json::exception& e) {
    fail(Errc::ParseError, e.what());
  }
}

inline nlohmann::json spec_to_json(const GenerationSpec& s) {
  return {{"name", s.name}, {"base", s.base},   {"kappa", s.kappa}, {"prize", to_string(s.prize)},
          {"cost", to_string(s.cost)}, {"alpha", s.alpha}, {"seed", s.seed}};
}

/// Manifest: either a JSON array of specs or {"specs": [...]}.
inline std::vector<GenerationSpec> parse_manifest(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    fail(Errc::ParseError, e.what());
  }
  const nlohmann::json& list = j.is_object() && j.contains("specs") ? j.at("specs") : j;
  if (!list.is_array()) fail(Errc::ParseError, "manifest must list specs");
  std::vector<GenerationSpec> out;
  for (const auto& item : list) out.push_back(spec_from_json(item));
  return out;
}

inline CoordinateSet load_coordinates(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Errc::ParseError, "cannot read " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_tsplib(buf.str());
}

/// Pure function of the spec (and the base file when one is named).
inline Instance generate(const GenerationSpec& spec, const std::filesystem::path& base_dir = {}) {
  if (!(spec.alpha > 0.0 && spec.alpha <= 1.0)) fail(Errc::Precondition, "alpha must lie in (0, 1]");
  Rng rng(spec.seed);
  const std::string name = spec.name.empty() ? default_name(spec) : spec.name;
  if (spec.base.rfind("pollution:", 0) == 0) {
    PollutionParams p;
    p.alpha = spec.alpha;
    Instance inst = synth_pollution_instance(std::stoi(spec.base.substr(10)), p, spec.seed);
    nlohmann::json meta = inst.metadata();
    meta["spec"] = spec_to_json(spec);
    return Instance(inst.graph(), inst.quota(), inst.root(), name, std::move(meta));
  }
  CoordinateSet coords;
  if (spec.base.rfind("random:", 0) == 0) {
    coords = random_coordinates(std::stoi(spec.base.substr(7)), rng);
  } else {
    std::filesystem::path path(spec.base);
    if (path.is_relative() && !base_dir.empty()) path = base_dir / path;
    coords = load_coordinates(path.string());
  }
  const int n = coords.size();
  const std::int64_t complete = static_cast<std::int64_t>(n) * (n - 1) / 2;
  Topology topology =
      static_cast<std::int64_t>(spec.kappa) * n >= complete ? complete_topology(n) : sparsify(n, spec.kappa, rng);
  std::vector<Prize> prizes = gen_prize(coords, spec.prize);
  std::vector<Edge> edges = assign_costs(topology, coords, spec.cost);
  SparseGraph g(std::move(prizes), std::move(edges), coords.labels);
  const Prize quota = set_quota(g.total_prize(), spec.alpha);
  nlohmann::json meta = {{"kappa", spec.kappa},      {"alpha", spec.alpha},         {"prize", to_string(spec.prize)},
                         {"cost", to_string(spec.cost)}, {"seed", spec.seed}, {"base", spec.base}};
  return Instance(std::move(g), quota, 0, name, std::move(meta));
}

}  // namespace pctsp
