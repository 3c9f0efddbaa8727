#pragma once

#include <gtest/gtest.h>

#include <vector>

#include "pctsp/graph/error.hpp"
#include "pctsp/graph/sparse_graph.hpp"

namespace pctsp::testing {

// External ids 1..n map to dense ids 0..n-1 in these fixtures.
inline SparseGraph make_graph(int n, std::vector<Edge> edges, std::vector<Prize> prizes = {}) {
  if (prizes.empty()) prizes.assign(static_cast<std::size_t>(n), 1);
  std::vector<std::int64_t> ext(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) ext[i] = i + 1;
  for (auto& e : edges) {
    --e.u;
    --e.v;
  }
  return SparseGraph(std::move(prizes), std::move(edges), std::move(ext));
}

inline SparseGraph triangle() { return make_graph(3, {{1, 2, 1}, {2, 3, 1}, {1, 3, 1}}); }
inline SparseGraph square() { return make_graph(4, {{1, 2, 1}, {2, 3, 1}, {3, 4, 1}, {4, 1, 1}}); }
inline SparseGraph line3() { return make_graph(3, {{1, 2, 2}, {2, 3, 3}}); }

inline Errc error_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return Errc::Precondition;
}

}  // namespace pctsp::testing
