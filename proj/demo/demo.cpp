// Generates a small sparse instance, runs the heuristics and the exact solver
// with each cost-cover mode, and prints one line per run.
#include <cstdio>

#include "pctsp/bench/runner.hpp"
#include "pctsp/bench/stats.hpp"
#include "pctsp/instances/spec.hpp"

int main() {
  using namespace pctsp;
  GenerationSpec spec;
  spec.base = "random:14";
  spec.kappa = 3;
  spec.prize = PrizeMode::Mod;
  spec.cost = CostMode::Mst;
  spec.alpha = 0.4;
  spec.seed = 2024;
  const Instance inst = generate(spec);

  const bench::DatasetStats s = bench::dataset_stats(inst);
  std::printf("%s: n=%d m=%d quota=%lld surplus=%s D(G)=%.3f\n", inst.name().c_str(), s.n, s.m,
              static_cast<long long>(inst.quota()), s.metric_surplus.str().c_str(), to_double(s.disjoint_ratio));

  bench::RunOptions opt;
  opt.heuristic_lower_bound = bench::heuristic_lower_bound(inst, 10.0);
  opt.solver.time_limit = 10.0;
  for (bench::Algorithm a : bench::kAllAlgorithms) {
    if (a == bench::Algorithm::Oracle) continue;
    const bench::RunRecord r = bench::run_one(inst, a, opt);
    std::printf("%-8s %-20s cost=%-6s gap=%-8s pre_cuts=%-3s nodes=%ld\n", r.algorithm.c_str(), r.status.c_str(),
                r.cost ? std::to_string(*r.cost).c_str() : "-", bench::format_double(r.gap).c_str(),
                r.pre_cuts ? std::to_string(*r.pre_cuts).c_str() : "-", r.nodes);
  }
}
