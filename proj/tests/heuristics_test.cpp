#include <gtest/gtest.h>

#include <random>

#include "oracle/brute_force.hpp"
#include "support.hpp"
#include "pctsp/heuristics/sbl_pec.hpp"

namespace pctsp {
namespace {

using testing::error_of;
using testing::make_graph;
using testing::square;
using testing::triangle;

Tour tour_of(const Instance& inst, std::vector<Vertex> seq) { return validate_tour(inst, seq).tour; }

// Random connected instance with roughly kappa * n edges and quota a fraction of the total prize.
Instance random_instance(std::mt19937_64& rng, int n, int kappa, double alpha, std::int64_t max_cost = 20) {
  auto g = testing::random_graph(rng, n, kappa * n, max_cost, 10);
  const auto quota = static_cast<Prize>(std::ceil(alpha * static_cast<double>(g.total_prize())));
  return Instance(std::move(g), quota, 0);
}

void expect_valid(const Instance& inst, const HeuristicResult& r) {
  if (!r.tour) {
    EXPECT_FALSE(r.feasible);
    return;
  }
  auto check = validate_tour(inst, r.tour->vertices());
  EXPECT_EQ(check.tour.cost(), r.tour->cost());
  EXPECT_EQ(check.prize_feasible, r.feasible);
}

TEST(Sbl, SquareGivesTheCycle) {
  Instance inst(square(), 4, 0);
  auto r = sbl(inst);
  ASSERT_TRUE(r.tour);
  EXPECT_EQ(r.tour->cost(), 4);
  EXPECT_TRUE(r.feasible);
  EXPECT_EQ(r.tour->size(), 4u);
}

TEST(Sbl, PathGraphHasNoDisjointPair) {
  Instance inst(make_graph(4, {{1, 2, 1}, {2, 3, 1}, {3, 4, 1}}), 1, 0);
  EXPECT_EQ(error_of([&] { sbl(inst); }), Errc::NoDisjointPair);
}

TEST(Sbl, NeverBelowOracle) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 60; ++t) {
    auto inst = random_instance(rng, 10, 2, 0.2);
    auto opt = testing::brute_optimum(inst);
    HeuristicResult r;
    try {
      r = sbl(inst);
    } catch (const Error& e) {
      ASSERT_EQ(e.code(), Errc::NoDisjointPair);
      continue;
    }
    expect_valid(inst, r);
    if (r.feasible) {
      ASSERT_TRUE(opt.cost);
      EXPECT_GE(r.tour->cost(), *opt.cost);
    }
  }
}

TEST(UnitaryLoss, Examples) {
  EXPECT_EQ(unitary_loss(5, 3, 4, 2), Rational(1));
  EXPECT_EQ(unitary_loss(2, 4, 3, 2), Rational(-2));
  EXPECT_EQ(unitary_loss(7, 7, 3, 1), Rational(0));
  EXPECT_EQ(unitary_loss(1, 4, 5, 3), Rational(-3, 2));
  EXPECT_EQ(error_of([] { unitary_loss(1, 1, 2, 2); }), Errc::InvalidCandidate);
}

// Triangle 1-2-3 plus vertex 4 adjacent to 1 and 2.
SparseGraph triangle_with_ear() {
  return make_graph(4, {{1, 2, 1}, {2, 3, 1}, {1, 3, 1}, {1, 4, 2}, {2, 4, 2}});
}

TEST(PathExtend, FeasibleTourUnchangedUnderCriterionA) {
  Instance inst(triangle_with_ear(), 3, 0);
  auto start = tour_of(inst, {0, 1, 2});
  auto r = path_extend(inst, start, {1, ExtensionCriterion::UntilFeasible, false});
  EXPECT_EQ(*r.tour, start);
  EXPECT_EQ(r.iterations, 0);
  EXPECT_TRUE(r.feasible);
}

TEST(PathExtend, CriterionARepairsFeasibility) {
  Instance inst(triangle_with_ear(), 4, 0);
  auto r = path_extend(inst, tour_of(inst, {0, 1, 2}), {1, ExtensionCriterion::UntilFeasible, false});
  EXPECT_TRUE(r.feasible);
  EXPECT_EQ(r.tour->size(), 4u);
  EXPECT_EQ(r.tour->cost(), 6);
  EXPECT_EQ(r.iterations, 1);
}

TEST(PathExtend, SingleCandidateEqualsMeanUnderCriterionB) {
  Instance inst(triangle_with_ear(), 3, 0);
  auto start = tour_of(inst, {0, 1, 2});
  auto cands = extension_candidates(inst.graph(), {0, 1, 2}, 1, false);
  ASSERT_EQ(cands.size(), 1u);
  auto r = path_extend(inst, start, {1, ExtensionCriterion::BelowMeanLoss, false});
  EXPECT_EQ(*r.tour, start);
}

TEST(PathExtend, RejectsBadStepAndMissingRoot) {
  Instance inst(triangle_with_ear(), 3, 0);
  auto start = tour_of(inst, {0, 1, 2});
  EXPECT_EQ(error_of([&] { path_extend(inst, start, {11, ExtensionCriterion::UntilFeasible, false}); }),
            Errc::Precondition);
  EXPECT_EQ(error_of([&] { path_extend(inst, start, {0, ExtensionCriterion::UntilFeasible, false}); }),
            Errc::Precondition);
  Instance other_root(triangle_with_ear(), 3, 3);
  Tour no_root = tour_of(Instance(triangle_with_ear(), 3, 0), {0, 1, 2});
  EXPECT_EQ(error_of([&] { path_extend(other_root, no_root, {}); }), Errc::RootAbsent);
}

TEST(PathExtend, CandidatesKeepRootAndAvoidTour) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 80; ++t) {
    auto inst = random_instance(rng, 10, 3, 0.9);
    auto cycle = bfs_initial_cycle(inst);
    if (!cycle) continue;
    std::vector<Vertex> seq(cycle->vertices().begin(), cycle->vertices().end());
    for (int step = 1; step <= 4; ++step) {
      for (const auto& c : extension_candidates(inst.graph(), seq, step, false)) {
        EXPECT_GE(c.extension_path.size(), 3u);
        EXPECT_GT(c.extension_prize, c.internal_prize);
        for (std::size_t i = 1; i + 1 < c.extension_path.size(); ++i) EXPECT_FALSE(cycle->contains(c.extension_path[i]));
        auto spliced = splice_extension(seq, c);
        auto check = validate_tour(inst, spliced);
        EXPECT_EQ(check.tour.vertices().front(), inst.root());
      }
    }
    const Prize before = cycle->prize();
    auto r = path_extend(inst, *cycle, {2, ExtensionCriterion::UntilFeasible, false});
    expect_valid(inst, r);
    EXPECT_GE(r.tour->prize(), before);
    EXPECT_LE(r.iterations, inst.graph().vertex_count());
  }
}

// Cycle 1..7 with unit costs and a chord 3-1 of cost 2; prize sits on 2 and 3.
Instance chorded_cycle() {
  auto g = make_graph(7, {{1, 2, 1}, {2, 3, 1}, {3, 4, 1}, {4, 5, 1}, {5, 6, 1}, {6, 7, 1}, {7, 1, 1}, {3, 1, 2}},
                      {0, 5, 5, 1, 1, 1, 1});
  return Instance(std::move(g), 10, 0);
}

TEST(PathCollapse, ShortcutsThroughTheChord) {
  auto inst = chorded_cycle();
  auto r = path_collapse(inst, tour_of(inst, {0, 1, 2, 3, 4, 5, 6}));
  ASSERT_TRUE(r.feasible);
  EXPECT_EQ(r.tour->cost(), 4);
  EXPECT_EQ(std::vector<Vertex>(r.tour->vertices().begin(), r.tour->vertices().end()), (std::vector<Vertex>{0, 1, 2}));
  EXPECT_EQ(testing::brute_optimum(inst).cost, 4);
}

TEST(PathCollapse, OptimumIsUnchanged) {
  auto inst = chorded_cycle();
  auto opt = tour_of(inst, {0, 1, 2});
  EXPECT_EQ(*path_collapse(inst, opt).tour, opt);
}

TEST(PathCollapse, RejectsInfeasibleInput) {
  auto inst = chorded_cycle().with_quota(100);
  EXPECT_EQ(error_of([&] { path_collapse(inst, tour_of(inst, {0, 1, 2})); }), Errc::Precondition);
}

TEST(PathCollapse, FullModeDominatesTwoEdgeMode) {
  std::mt19937_64 rng(21);
  int compared = 0;
  for (int t = 0; t < 150; ++t) {
    auto inst = random_instance(rng, 9, 3, 0.3);
    for (const auto& c : testing::all_cycles_through(inst.graph(), inst.root())) {
      if (c.prize < inst.quota()) continue;
      auto tour = tour_of(inst, c.vertices);
      auto full = path_collapse(inst, tour);
      auto restricted = path_collapse(inst, tour, {ClosingRule::EdgeToStart, true});
      expect_valid(inst, full);
      expect_valid(inst, restricted);
      EXPECT_TRUE(full.feasible);
      EXPECT_LE(full.tour->cost(), tour.cost());
      EXPECT_LE(full.tour->cost(), restricted.tour->cost());
      auto literal = path_collapse(inst, tour, {ClosingRule::EdgeToEnd, false});
      expect_valid(inst, literal);
      EXPECT_LE(literal.tour->cost(), tour.cost());
      ++compared;
      break;
    }
  }
  EXPECT_GT(compared, 50);
}

TEST(SblPec, SquareStaysOptimal) {
  Instance inst(square(), 4, 0);
  auto r = sbl_pec(inst);
  EXPECT_TRUE(r.feasible);
  EXPECT_EQ(r.tour->cost(), 4);
  ASSERT_FALSE(r.stage_trace.empty());
  EXPECT_EQ(r.stage_trace.front().stage, "SBL");
}

TEST(SblPec, BeatsSblFeasibilityAndRespectsOracle) {
  std::mt19937_64 rng(2024);
  int sbl_feasible = 0;
  int pec_feasible = 0;
  int suite = 0;
  while (suite < 200) {
    const int n = std::uniform_int_distribution<int>(8, 12)(rng);
    auto inst = random_instance(rng, n, 2, 0.6);
    auto opt = testing::brute_optimum(inst);
    if (!opt.cost) continue;
    ++suite;
    bool sbl_ok = false;
    try {
      sbl_ok = sbl(inst).feasible;
    } catch (const Error&) {
    }
    auto r = sbl_pec(inst);
    expect_valid(inst, r);
    sbl_feasible += sbl_ok;
    pec_feasible += r.feasible;
    if (sbl_ok) {
      EXPECT_TRUE(r.feasible);
    }
    if (r.feasible) {
      EXPECT_GE(r.tour->cost(), *opt.cost);
    }
  }
  EXPECT_GT(pec_feasible, sbl_feasible);
}

TEST(SblPec, Deterministic) {
  std::mt19937_64 rng(77);
  for (int t = 0; t < 30; ++t) {
    auto inst = random_instance(rng, 12, 3, 0.5);
    auto a = sbl_pec(inst);
    auto b = sbl_pec(inst);
    EXPECT_EQ(a.tour, b.tour);
    ASSERT_EQ(a.stage_trace.size(), b.stage_trace.size());
    for (std::size_t i = 0; i < a.stage_trace.size(); ++i) {
      EXPECT_EQ(a.stage_trace[i].stage, b.stage_trace[i].stage);
      EXPECT_EQ(a.stage_trace[i].cost, b.stage_trace[i].cost);
    }
  }
}

TEST(BfsInitialCycle, SquareAndTree) {
  Instance sq(square(), 1, 0);
  auto c = bfs_initial_cycle(sq);
  ASSERT_TRUE(c);
  EXPECT_EQ(c->size(), 4u);
  Instance tree(make_graph(4, {{1, 2, 1}, {1, 3, 1}, {3, 4, 1}}), 1, 0);
  EXPECT_FALSE(bfs_initial_cycle(tree));
}

TEST(BfsInitialCycle, ThetaGraphGivesFewestEdges) {
  // Three internally disjoint 1-2 paths of 2, 3 and 4 edges.
  Instance inst(make_graph(8, {{1, 3, 5}, {3, 2, 5}, {1, 4, 1}, {4, 5, 1}, {5, 2, 1}, {1, 6, 1}, {6, 7, 1}, {7, 8, 1},
                               {8, 2, 1}}),
                1, 0);
  auto c = bfs_initial_cycle(inst);
  ASSERT_TRUE(c);
  std::size_t fewest = 100;
  for (const auto& cyc : testing::all_cycles_through(inst.graph(), 0)) fewest = std::min(fewest, cyc.vertices.size());
  EXPECT_EQ(c->size(), fewest);
  EXPECT_EQ(c->size(), 5u);
}

TEST(BfsEc, TreeHasNoTour) {
  Instance tree(make_graph(4, {{1, 2, 1}, {1, 3, 1}, {3, 4, 1}}), 1, 0);
  auto r = bfs_ec(tree);
  EXPECT_FALSE(r.tour);
  EXPECT_FALSE(r.feasible);
}

TEST(BfsEc, DenseInstanceIsFeasible) {
  std::vector<Edge> edges;
  for (int i = 1; i <= 6; ++i)
    for (int j = i + 1; j <= 6; ++j) edges.push_back({i, j, 1 + (i * j) % 5});
  Instance inst(make_graph(6, edges, {0, 3, 3, 3, 3, 3}), 12, 0);
  auto r = bfs_ec(inst);
  expect_valid(inst, r);
  EXPECT_TRUE(r.feasible);
}

TEST(BfsEc, NoSingleVertexInsertionWhereSblPecSucceeds) {
  // Square 1-2-3-4 with an outer path 2-5-6-3 carrying the prize.
  Instance inst(make_graph(6, {{1, 2, 1}, {2, 3, 1}, {3, 4, 1}, {4, 1, 1}, {2, 5, 1}, {5, 6, 1}, {6, 3, 1}},
                           {0, 0, 0, 0, 5, 5}),
                10, 0);
  ASSERT_TRUE(testing::brute_optimum(inst).cost);
  auto baseline = bfs_ec(inst);
  ASSERT_TRUE(baseline.tour);
  EXPECT_FALSE(baseline.feasible);
  auto r = sbl_pec(inst);
  EXPECT_TRUE(r.feasible);
  EXPECT_EQ(r.tour->cost(), *testing::brute_optimum(inst).cost);
}

TEST(BfsEc, ResultsAreValidTours) {
  std::mt19937_64 rng(8);
  for (int t = 0; t < 100; ++t) {
    auto inst = random_instance(rng, 11, 3, 0.4);
    expect_valid(inst, bfs_ec(inst));
  }
}

}  // namespace
}  // namespace pctsp
