#include <gtest/gtest.h>

#include <random>

#include "oracle/brute_force.hpp"
#include "support.hpp"
#include "pctsp/graph/metric.hpp"
#include "pctsp/graph/preprocess.hpp"
#include "pctsp/graph/shortest_path.hpp"
#include "pctsp/graph/suurballe.hpp"
#include "pctsp/graph/tour.hpp"

namespace pctsp {
namespace {

using testing::error_of;
using testing::line3;
using testing::make_graph;
using testing::square;
using testing::triangle;

TEST(SparseGraph, RejectsSelfLoopsParallelEdgesAndDisconnection) {
  EXPECT_EQ(error_of([] { make_graph(2, {{1, 1, 1}, {1, 2, 1}}); }), Errc::InvariantViolation);
  EXPECT_EQ(error_of([] { make_graph(2, {{1, 2, 1}, {2, 1, 4}}); }), Errc::InvariantViolation);
  EXPECT_EQ(error_of([] { make_graph(4, {{1, 2, 1}, {3, 4, 1}}); }), Errc::InvariantViolation);
  EXPECT_EQ(error_of([] { make_graph(2, {{1, 2, -1}}); }), Errc::InvariantViolation);
}

TEST(SparseGraph, UndirectedLookup) {
  auto g = triangle();
  EXPECT_EQ(g.cost(0, 2), g.cost(2, 0));
  EXPECT_FALSE(g.has_edge(0, 0));
  EXPECT_EQ(g.external_id(2), 3);
}

TEST(ValidateTour, TriangleIsTheOnlyCycle) {
  Instance inst(triangle(), 3, 0);
  auto check = validate_tour(inst, std::vector<Vertex>{0, 1, 2});
  EXPECT_EQ(check.tour.cost(), 3);
  EXPECT_EQ(check.tour.prize(), 3);
  EXPECT_TRUE(check.prize_feasible);
}

TEST(ValidateTour, ErrorPaths) {
  Instance inst(triangle(), 3, 0);
  EXPECT_EQ(error_of([&] { validate_tour(inst, std::vector<Vertex>{0, 1, 1, 2}); }), Errc::NotSimple);
  Instance path(line3(), 0, 0);
  EXPECT_EQ(error_of([&] { validate_tour(path, std::vector<Vertex>{0, 1, 2}); }), Errc::MissingEdge);
  Instance sq(square(), 0, 0);
  EXPECT_EQ(error_of([&] { validate_tour(sq, std::vector<Vertex>{1, 2, 3}); }), Errc::MissingEdge);
  auto k4 = make_graph(4, {{1, 2, 1}, {2, 3, 1}, {3, 1, 1}, {3, 4, 1}, {4, 1, 1}});
  Instance rooted4(k4, 0, 3);
  EXPECT_EQ(error_of([&] { validate_tour(rooted4, std::vector<Vertex>{0, 1, 2}); }), Errc::RootAbsent);
  EXPECT_EQ(error_of([&] { validate_tour(sq, std::vector<Vertex>{0, 1}); }), Errc::TooShort);
}

TEST(ValidateTour, RotatesRootFirstAndFlagsInfeasibility) {
  Instance inst(square(), 10, 2);
  auto check = validate_tour(inst, std::vector<Vertex>{0, 1, 2, 3});
  EXPECT_EQ(check.tour.vertices()[0], 2);
  EXPECT_FALSE(check.prize_feasible);
}

TEST(ShortestPath, LineAndForbidden) {
  auto g = line3();
  EXPECT_EQ(shortest_path(g, 0).distance[2], Distance{5});
  std::vector<char> forbidden{0, 1, 0};
  EXPECT_TRUE(shortest_path(g, 0, forbidden).distance[2].is_infinite());
  EXPECT_TRUE(shortest_path(g, 0, forbidden).path_to(2).empty());
}

TEST(ShortestPath, SquareTieBreaksOnLowestPredecessor) {
  auto tree = shortest_path(square(), 0);
  EXPECT_EQ(tree.distance[2], Distance{2});
  EXPECT_EQ(tree.predecessor[2], Vertex{1});
  EXPECT_EQ(tree.path_to(2), (std::vector<Vertex>{0, 1, 2}));
}

TEST(ShortestPath, ForbiddenSourceIsPrecondition) {
  std::vector<char> forbidden{1, 0, 0};
  EXPECT_EQ(error_of([&] { shortest_path(line3(), 0, forbidden); }), Errc::Precondition);
}

TEST(Suurballe, SquareOppositeVertex) {
  auto pairs = suurballe(square(), 0);
  ASSERT_TRUE(pairs[2].has_value());
  EXPECT_EQ(pairs[2]->combined_cost, 4);
  EXPECT_EQ(pairs[2]->path_a, (std::vector<Vertex>{0, 1, 2}));
  EXPECT_EQ(pairs[2]->path_b, (std::vector<Vertex>{0, 3, 2}));
  EXPECT_EQ(pairs[2]->combined_prize, 4);
  EXPECT_FALSE(pairs[0].has_value());
}

TEST(Suurballe, PathGraphHasNoPair) {
  auto pairs = suurballe(line3(), 0);
  EXPECT_FALSE(pairs[1].has_value());
  EXPECT_FALSE(pairs[2].has_value());
}

// The greedy shortest path 0-1-2-3 blocks every disjoint partner; the
// residual search must reroute through the reversed middle arc.
TEST(Suurballe, NeedsResidualReversal) {
  auto g = make_graph(6, {{1, 2, 1}, {2, 3, 1}, {3, 4, 1}, {1, 5, 2}, {5, 3, 2}, {2, 6, 2}, {6, 4, 2}});
  auto pairs = suurballe(g, 0);
  ASSERT_TRUE(pairs[3].has_value());
  EXPECT_EQ(pairs[3]->combined_cost, 10);
  auto oracle = testing::brute_disjoint_pair(g, 0, 3);
  EXPECT_EQ(oracle.min_cost, 10);
}

TEST(Suurballe, MatchesExhaustiveEnumeration) {
  std::mt19937_64 rng(7);
  int pairs_checked = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 5 + trial % 4;
    auto g = testing::random_graph(rng, n, 2 * n, 20, 5, 0);
    auto pairs = suurballe(g, 0);
    for (Vertex t = 1; t < n; ++t) {
      auto oracle = testing::brute_disjoint_pair(g, 0, t);
      ASSERT_EQ(pairs[t].has_value(), oracle.min_cost.has_value());
      if (!pairs[t]) continue;
      ++pairs_checked;
      EXPECT_EQ(pairs[t]->combined_cost, *oracle.min_cost);
      EXPECT_TRUE(oracle.prizes_at_min.count(pairs[t]->combined_prize));
      // Returned paths really are disjoint root-t paths of the stated cost.
      std::vector<int> hits(static_cast<std::size_t>(n), 0);
      for (Vertex v : pairs[t]->path_a) ++hits[v];
      for (Vertex v : pairs[t]->path_b) ++hits[v];
      for (Vertex v = 0; v < n; ++v) EXPECT_LE(hits[v], (v == 0 || v == t) ? 2 : 1);
      EXPECT_EQ(testing::path_cost_of(g, pairs[t]->path_a) + testing::path_cost_of(g, pairs[t]->path_b),
                pairs[t]->combined_cost);
    }
  }
  EXPECT_GT(pairs_checked, 100);
}

TEST(Metric, TriangleViolation) {
  auto g = make_graph(3, {{1, 2, 1}, {2, 3, 1}, {1, 3, 3}});
  EXPECT_FALSE(is_metric_edge(g, *g.find_edge(0, 2)));
  EXPECT_TRUE(is_metric_edge(g, *g.find_edge(0, 1)));
  EXPECT_EQ(count_metric_edges(g), 2);
  EXPECT_EQ(metric_surplus(g), Rational(0));
}

TEST(Metric, TreeIsFullyMetric) {
  auto g = make_graph(4, {{1, 2, 5}, {2, 3, 1}, {2, 4, 7}});
  for (EdgeId e = 0; e < g.edge_count(); ++e) EXPECT_TRUE(is_metric_edge(g, e));
  EXPECT_EQ(metric_surplus(g), Rational(1));
}

TEST(Metric, CountMatchesFloydWarshallAndLemma) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 10;
    auto g = testing::random_graph(rng, n, 18, 30, 3, 0);
    auto d = testing::floyd_warshall(g);
    std::int64_t expected = 0;
    for (const Edge& e : g.edges()) expected += d[e.u][e.v] == e.cost;
    EXPECT_EQ(count_metric_edges(g), expected);
    EXPECT_GE(expected, n - 1);
    auto z = metric_surplus(g);
    EXPECT_GE(z, Rational(0));
    EXPECT_LE(z, Rational(1));
  }
}

TEST(Preprocess, PendantPathRemoved) {
  // Triangle 1-2-3 with pendant path 1-4-5.
  auto g = make_graph(5, {{1, 2, 1}, {2, 3, 1}, {1, 3, 1}, {1, 4, 1}, {4, 5, 1}}, {1, 1, 1, 3, 3});
  Instance inst(g, 2, 0);
  auto [reduced, report] = preprocess(inst);
  EXPECT_EQ(reduced.graph().vertex_count(), 3);
  EXPECT_EQ(report.removed_vertices, (std::vector<Vertex>{3, 4}));
  EXPECT_EQ(report.prize_ratio, Rational(3, 9));
  EXPECT_EQ(reduced.quota(), 2);
  EXPECT_EQ(reduced.graph().external_id(reduced.root()), 1);
}

TEST(Preprocess, BiconnectedIsIdentity) {
  Instance inst(square(), 2, 1);
  auto [reduced, report] = preprocess(inst);
  EXPECT_TRUE(report.removed_vertices.empty());
  EXPECT_EQ(reduced.graph().edge_count(), 4);
  EXPECT_EQ(report.prize_ratio, Rational(1));
}

TEST(Preprocess, RootAtArticulationKeepsEveryBlockThroughIt) {
  // Two triangles sharing the root, plus a third block hanging off vertex 2.
  auto g = make_graph(7, {{1, 2, 1}, {2, 3, 1}, {3, 1, 1}, {1, 4, 1}, {4, 5, 1}, {5, 1, 1},
                          {2, 6, 1}, {6, 7, 1}, {7, 2, 1}});
  auto [reduced, report] = preprocess(Instance(g, 0, 0));
  EXPECT_EQ(reduced.graph().vertex_count(), 5);
  EXPECT_EQ(report.removed_vertices, (std::vector<Vertex>{5, 6}));
}

TEST(Preprocess, LoneRootMapsToItself) {
  Instance inst(SparseGraph({4}, {}), 0, 0);
  auto [reduced, report] = preprocess(inst);
  EXPECT_EQ(reduced.graph().vertex_count(), 1);
  EXPECT_TRUE(report.removed_vertices.empty());
}

TEST(Preprocess, PreservesOptimumAndIsIdempotent) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 80; ++trial) {
    auto g = testing::random_graph(rng, 12, 16, 20, 10);
    Instance inst(g, 8 + trial % 20, static_cast<Vertex>(trial % 12));
    auto [once, r1] = preprocess(inst);
    EXPECT_EQ(testing::brute_optimum(inst).cost, testing::brute_optimum(once).cost);
    auto [twice, r2] = preprocess(once);
    EXPECT_TRUE(r2.removed_vertices.empty());
    EXPECT_EQ(twice.graph().vertex_count(), once.graph().vertex_count());
  }
}

TEST(DisjointPrizeRatio, Examples) {
  EXPECT_EQ(disjoint_prize_ratio(square(), 0), Rational(1));
  EXPECT_EQ(disjoint_prize_ratio(line3(), 0), Rational(0));
  EXPECT_EQ(disjoint_prize_ratio(make_graph(3, {{1, 2, 1}, {2, 3, 1}, {1, 3, 1}}, {0, 0, 0}), 0), Rational(0));
}

TEST(DisjointPrizeRatio, MatchesEnumeration) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    // Wide cost range keeps least-cost pairs unique in practice.
    auto g = testing::random_graph(rng, 8, 13, 1000, 9, 1);
    Prize best = 0;
    for (Vertex t = 1; t < 8; ++t) {
      auto oracle = testing::brute_disjoint_pair(g, 0, t);
      if (!oracle.min_cost) continue;
      best = std::max(best, *oracle.prizes_at_min.rbegin());
    }
    const Prize total = g.total_prize();
    if (total == 0) continue;
    EXPECT_EQ(disjoint_prize_ratio(g, 0), Rational(best, total));
  }
}

}  // namespace
}  // namespace pctsp
