#pragma once

#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "pctsp/graph/instance.hpp"

namespace pctsp {

inline constexpr const char* kInstanceFormat = "pctsp-instance";
inline constexpr int kInstanceVersion = 1;

/// Canonical document: vertices in id order, edges in (u, v) order, all ids external.
inline nlohmann::json instance_to_json(const Instance& instance) {
  const SparseGraph& g = instance.graph();
  nlohmann::json j;
  j["format"] = kInstanceFormat;
  j["version"] = kInstanceVersion;
  j["name"] = instance.name();
  j["root"] = g.external_id(instance.root());
  j["quota"] = instance.quota();
  nlohmann::json vertices = nlohmann::json::array();
  for (Vertex v = 0; v < g.vertex_count(); ++v) vertices.push_back({{"id", g.external_id(v)}, {"prize", g.prize(v)}});
  j["vertices"] = std::move(vertices);
  nlohmann::json edges = nlohmann::json::array();
  for (const Edge& e : g.edges()) {
    edges.push_back({{"u", g.external_id(e.u)}, {"v", g.external_id(e.v)}, {"cost", e.cost}});
  }
  j["edges"] = std::move(edges);
  j["metadata"] = instance.metadata();
  return j;
}

inline std::string instance_to_string(const Instance& instance) { return instance_to_json(instance).dump(1) + "\n"; }

inline Instance instance_from_json(const nlohmann::json& j) {
  try {
    if (!j.is_object()) fail(Errc::ParseError, "instance document must be an object");
    if (j.contains("format") && j.at("format") != kInstanceFormat) fail(Errc::ParseError, "unknown format tag");
    if (j.contains("version") && j.at("version").get<int>() != kInstanceVersion) {
      fail(Errc::ParseError, "unsupported instance version");
    }
    std::map<std::int64_t, Vertex> index;
    std::vector<Prize> prizes;
    std::vector<std::int64_t> external;
    for (const auto& v : j.at("vertices")) {
      const auto id = v.at("id").get<std::int64_t>();
      if (!index.emplace(id, static_cast<Vertex>(prizes.size())).second) {
        fail(Errc::InvariantViolation, "duplicate vertex id " + std::to_string(id));
      }
      prizes.push_back(v.at("prize").get<Prize>());
      external.push_back(id);
    }
    auto lookup = [&](std::int64_t id) {
      auto it = index.find(id);
      if (it == index.end()) fail(Errc::InvariantViolation, "unknown vertex id " + std::to_string(id));
      return it->second;
    };
    std::vector<Edge> edges;
    for (const auto& e : j.at("edges")) {
      edges.push_back({lookup(e.at("u").get<std::int64_t>()), lookup(e.at("v").get<std::int64_t>()),
                       e.at("cost").get<Cost>()});
    }
    const Vertex root = lookup(j.at("root").get<std::int64_t>());
    nlohmann::json metadata = j.contains("metadata") ? j.at("metadata") : nlohmann::json::object();
    return Instance(SparseGraph(std::move(prizes), std::move(edges), std::move(external)), j.at("quota").get<Prize>(),
                    root, j.value("name", std::string("instance")), std::move(metadata));
  } catch (const nlohmann::json::exception& e) {
    fail(Errc::ParseError, e.what());
  }
}

inline Instance instance_from_string(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    fail(Errc::ParseError, e.what());
  }
  return instance_from_json(j);
}

inline void save_instance(const Instance& instance, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(Errc::ParseError, "cannot write " + path);
  out << instance_to_string(instance);
}

inline Instance load_instance(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Errc::ParseError, "cannot read " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return instance_from_string(buf.str());
}

}  // namespace pctsp
