#pragma once

#include <memory>
#include <string>
#include <utility>

#include <nlohmann/json.hpp>

#include "pctsp/graph/error.hpp"
#include "pctsp/graph/sparse_graph.hpp"

namespace pctsp {

/// A PCTSP instance: graph, quota and root. Generation parameters, when the
/// instance was generated, live in `metadata` as a JSON object.
class Instance {
 public:
  Instance() = default;

  Instance(SparseGraph graph, Prize quota, Vertex root, std::string name = "instance",
           nlohmann::json metadata = nlohmann::json::object())
      : graph_(std::make_shared<const SparseGraph>(std::move(graph))),
        quota_(quota),
        root_(root),
        name_(std::move(name)),
        metadata_(std::move(metadata)) {
    if (quota_ < 0) fail(Errc::InvariantViolation, "quota must be non-negative");
    if (root_ < 0 || root_ >= graph_->vertex_count()) {
      fail(Errc::InvariantViolation, "root is not a vertex of the graph");
    }
  }

  const SparseGraph& graph() const { return *graph_; }
  Prize quota() const { return quota_; }
  Vertex root() const { return root_; }
  const std::string& name() const { return name_; }
  const nlohmann::json& metadata() const { return metadata_; }

  Instance with_quota(Prize quota) const {
    Instance copy = *this;
    if (quota < 0) fail(Errc::InvariantViolation, "quota must be non-negative");
    copy.quota_ = quota;
    return copy;
  }

 private:
  std::shared_ptr<const SparseGraph> graph_ = std::make_shared<const SparseGraph>();
  Prize quota_ = 0;
  Vertex root_ = 0;
  std::string name_;
  nlohmann::json metadata_ = nlohmann::json::object();
};

}  // namespace pctsp
