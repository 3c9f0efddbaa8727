// Acceptance suite: one PASS/FAIL line per criterion. Every check that feeds
// the determinism comparison writes its per-instance results to a transcript;
// timings stay out of transcripts.
#include <algorithm>
#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "oracle/brute_force.hpp"
#include "pctsp/bench/aggregate.hpp"
#include "pctsp/bench/suite.hpp"
#include "pctsp/exact/branch_and_cut.hpp"
#include "pctsp/graph/io.hpp"
#include "pctsp/graph/metric.hpp"
#include "pctsp/graph/preprocess.hpp"
#include "pctsp/instances/spec.hpp"

using namespace pctsp;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
  std::string transcript;
};

struct LoggedCut {
  std::size_t instance = 0;
  CostCoverMode mode = CostCoverMode::None;
  SecCut cut;
  double violation = 0.0;  // at the point that triggered it
};

// Shared between criteria 1 and 9.
struct OracleSuiteLog {
  std::vector<Instance> instances;
  std::vector<testing::OptimumOracle> oracle;
  std::vector<LoggedCut> cuts;
  std::map<std::pair<std::size_t, int>, Tour> final_tours;  // (instance, mode) -> optimal tour
};

constexpr std::uint64_t kSeed = 20240611;
constexpr CostCoverMode kModes[] = {CostCoverMode::None, CostCoverMode::Spcc, CostCoverMode::Dpcc};

// n in [6, 12], kappa in {2, 3}, prizes in [0, 10], alpha in {0.3, 0.6}.
std::vector<Instance> oracle_suite(std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Instance> out;
  for (int i = 0; i < 200; ++i) {
    const int n = static_cast<int>(uniform_int(rng, 6, 12));
    const int kappa = i % 2 == 0 ? 2 : 3;
    const double alpha = i % 4 < 2 ? 0.3 : 0.6;
    SparseGraph g = random_connected_graph(n, kappa * n, 20, 10, rng);
    const Prize quota = set_quota(std::max<Prize>(g.total_prize(), 1), alpha);
    nlohmann::json meta = {{"kappa", kappa}, {"alpha", alpha}};
    out.emplace_back(std::move(g), quota, 0, "oracle-" + std::to_string(i), std::move(meta));
  }
  return out;
}

std::pair<std::vector<double>, std::vector<double>> incidence(const SparseGraph& g, const Tour& t) {
  std::vector<double> x(static_cast<std::size_t>(g.edge_count()), 0.0);
  std::vector<double> y(static_cast<std::size_t>(g.vertex_count()), 0.0);
  const auto v = t.vertices();
  for (std::size_t i = 0; i < v.size(); ++i) {
    y[v[i]] = 1.0;
    x[*g.find_edge(v[i], v[(i + 1) % v.size()])] = 1.0;
  }
  return {x, y};
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

Outcome criterion1(OracleSuiteLog& log) {
  detail::Stopwatch clock;
  log = {};
  log.instances = oracle_suite(kSeed);
  std::ostringstream tr;
  int agree = 0;
  int total = 0;
  int instances_ok = 0;
  for (std::size_t i = 0; i < log.instances.size(); ++i) {
    bool all_modes = true;
    const Instance& inst = log.instances[i];
    log.oracle.push_back(testing::brute_optimum(inst));
    const auto& expect = log.oracle.back().cost;
    for (CostCoverMode mode : kModes) {
      SolverConfig cfg;
      cfg.cost_cover = mode;
      SolverHooks hooks;
      hooks.on_sec_cut = [&](const SecCut& cut, const LpPoint& p) {
        log.cuts.push_back({i, mode, cut, sec_violation(inst.graph(), cut, p.x, p.y)});
      };
      const SolveResult r = branch_and_cut(inst, cfg, hooks);
      const bool ok = expect ? r.status == SolveStatus::Optimal && r.upper_bound == *expect
                             : r.status == SolveStatus::Infeasible;
      if (r.best_tour && r.status == SolveStatus::Optimal) log.final_tours[{i, static_cast<int>(mode)}] = *r.best_tour;
      agree += ok;
      all_modes = all_modes && ok;
      ++total;
      tr << i << ' ' << to_string(mode) << ' ' << to_string(r.status) << ' '
         << (r.upper_bound ? std::to_string(*r.upper_bound) : "-") << ' ' << (expect ? std::to_string(*expect) : "-")
         << " nodes=" << r.counters.nodes << " secs=" << r.counters.sec_cuts << " pre=" << r.counters.pre_cuts << '\n';
    }
    instances_ok += all_modes;
  }
  const double seconds = clock.seconds();
  return {agree == total && seconds < 600.0,
          fmt("%d/%zu instances match the oracle in all three modes (%d/%d solves); %.1f s", instances_ok,
              log.instances.size(), agree, total, seconds),
          tr.str()};
}

Outcome criterion2(const OracleSuiteLog& log) {
  std::ostringstream tr;
  long subset_violations = 0;
  long optimal_violations = 0;
  long with_bound = 0;
  long spcc_total = 0;
  long dpcc_total = 0;
  for (std::size_t i = 0; i < log.instances.size(); ++i) {
    const Instance& inst = log.instances[i];
    const HeuristicResult h = sbl_pec(inst);
    std::optional<Cost> ub;
    if (h.feasible) ub = h.tour->cost();
    if (ub) ++with_bound;
    const auto fs = apply_cost_cover(precompute_cost_cover(inst, CostCoverMode::Spcc), ub);
    const auto fd = apply_cost_cover(precompute_cost_cover(inst, CostCoverMode::Dpcc), ub);
    spcc_total += static_cast<long>(fs.size());
    dpcc_total += static_cast<long>(fd.size());
    const std::set<Vertex> dset(fd.begin(), fd.end());
    for (Vertex v : fs) subset_violations += !dset.count(v);
    for (const auto& tour : log.oracle[i].optimal_tours) {
      for (Vertex v : tour) {
        optimal_violations += dset.count(v) > 0;
        optimal_violations += std::count(fs.begin(), fs.end(), v) > 0;
      }
    }
    tr << i << " ub=" << (ub ? std::to_string(*ub) : "-") << " spcc=" << fs.size() << " dpcc=" << fd.size() << '\n';
  }
  return {subset_violations == 0 && optimal_violations == 0,
          fmt("%ld instances with an SBL-PEC bound; fixed spcc=%ld dpcc=%ld; subset violations %ld, optimal-tour "
              "violations %ld",
              with_bound, spcc_total, dpcc_total, subset_violations, optimal_violations),
          tr.str()};
}

Outcome criterion3() {
  Rng rng(kSeed + 3);
  std::ostringstream tr;
  long pairs = 0;
  long violations = 0;
  for (int i = 0; i < 150; ++i) {
    const int n = static_cast<int>(uniform_int(rng, 6, 10));
    const int kappa = static_cast<int>(uniform_int(rng, 1, 3));
    const SparseGraph g = random_connected_graph(n, kappa * n, 30, 10, rng);
    const auto cycles = testing::all_cycles_through(g, 0);
    const auto suur = suurballe(g, 0);
    for (Vertex t = 1; t < n; ++t) {
      std::optional<std::int64_t> best;
      for (const auto& c : cycles) {
        if (std::find(c.vertices.begin(), c.vertices.end(), t) == c.vertices.end()) continue;
        if (!best || c.cost < *best) best = c.cost;
      }
      if (!best) {
        violations += suur[t].has_value();
        continue;
      }
      ++pairs;
      const bool ok = suur[t] && suur[t]->combined_cost == *best;
      violations += !ok;
      tr << i << ' ' << t << ' ' << *best << ' ' << (suur[t] ? std::to_string(suur[t]->combined_cost) : "-") << '\n';
    }
  }
  return {violations == 0 && pairs >= 500, fmt("%ld pairs compared, %ld mismatches", pairs, violations), tr.str()};
}

Outcome criterion4() {
  Rng rng(kSeed + 4);
  std::ostringstream tr;
  long violations = 0;
  for (int i = 0; i < 500; ++i) {
    const int n = static_cast<int>(uniform_int(rng, 3, 40));
    const std::int64_t cap = static_cast<std::int64_t>(n) * (n - 1) / 2;
    const auto m = static_cast<int>(uniform_int(rng, n - 1, std::min<std::int64_t>(cap, 5L * n)));
    const Cost max_cost = i % 3 == 0 ? 3 : 1000;  // small ranges force ties
    const SparseGraph g = random_connected_graph(n, m, max_cost, 10, rng);
    const auto metric = count_metric_edges(g);
    violations += metric < n - 1;
    tr << i << ' ' << n << ' ' << g.edge_count() << ' ' << metric << '\n';
  }
  return {violations == 0, fmt("500 graphs, %ld with fewer than n-1 metric edges", violations), tr.str()};
}

long violating_triangles(const SparseGraph& g) {
  long bad = 0;
  const int n = g.vertex_count();
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      for (Vertex w = 0; w < n; ++w)
        if (w != u && w != v && g.cost(u, v) > g.cost(u, w) + g.cost(w, v)) ++bad;
  return bad;
}

Outcome criterion5() {
  std::ostringstream tr;
  long mst_failures = 0;
  for (int i = 0; i < 50; ++i) {
    GenerationSpec s;
    s.base = "random:" + std::to_string(10 + i % 31);
    s.kappa = 2 + i % 4;
    s.cost = CostMode::Mst;
    s.prize = static_cast<PrizeMode>(i % 3);
    s.seed = kSeed + 500 + static_cast<std::uint64_t>(i);
    const Instance inst = generate(s);
    const SparseGraph& g = inst.graph();
    const auto metric = count_metric_edges(g);
    const bool ok = metric == g.vertex_count() - 1 && metric_surplus(g) == Rational{0};
    mst_failures += !ok;
    tr << "mst " << i << ' ' << g.vertex_count() << ' ' << g.edge_count() << ' ' << metric << '\n';
  }
  long euc_failures = 0;
  long regenerated = 0;
  for (int i = 0; i < 50; ++i) {
    GenerationSpec s;
    s.base = "random:" + std::to_string(8 + i % 18);
    s.kappa = 1000;  // complete graph
    s.cost = CostMode::Euc;
    s.seed = kSeed + 900 + static_cast<std::uint64_t>(i);
    Instance inst = generate(s);
    long bad = violating_triangles(inst.graph());
    for (int attempt = 0; bad > 0 && attempt < 10; ++attempt) {
      std::printf("  note: EUC instance %d has %ld rounded-cost triangle violations; regenerating\n", i, bad);
      ++regenerated;
      s.seed += 100000;
      inst = generate(s);
      bad = violating_triangles(inst.graph());
    }
    const SparseGraph& g = inst.graph();
    const bool complete = 2L * g.edge_count() == static_cast<long>(g.vertex_count()) * (g.vertex_count() - 1);
    const bool ok = bad == 0 && complete && metric_surplus(g) == Rational{1};
    euc_failures += !ok;
    tr << "euc " << i << ' ' << g.vertex_count() << ' ' << bad << ' ' << metric_surplus(g).str() << '\n';
  }
  return {mst_failures == 0 && euc_failures == 0,
          fmt("MST: %ld/50 with zeta != 0; EUC complete: %ld/50 with zeta != 1 (%ld regenerated)", mst_failures,
              euc_failures, regenerated),
          tr.str()};
}

Outcome criterion6() {
  Rng rng(kSeed + 6);
  std::ostringstream tr;
  long optimum_mismatch = 0;
  long not_idempotent = 0;
  long shrunk = 0;
  for (int i = 0; i < 200; ++i) {
    const int n = static_cast<int>(uniform_int(rng, 6, 14));
    // Sparse enough that many roots sit next to pendant trees or cut vertices.
    const auto m = static_cast<int>(uniform_int(rng, n - 1, n + n / 2));
    SparseGraph g = random_connected_graph(n, m, 20, 10, rng);
    const auto root = static_cast<Vertex>(uniform_int(rng, 0, n - 1));
    const Prize quota = set_quota(std::max<Prize>(g.total_prize(), 1), i % 2 ? 0.3 : 0.6);
    const Instance inst(std::move(g), quota, root, "pre-" + std::to_string(i));
    auto [once, report] = preprocess(inst);
    auto [twice, report2] = preprocess(once);
    const auto before = testing::brute_optimum(inst).cost;
    const auto after = testing::brute_optimum(once).cost;
    optimum_mismatch += before != after;
    const bool same = report2.removed_vertices.empty() && instance_to_string(once) == instance_to_string(twice);
    not_idempotent += !same;
    shrunk += !report.removed_vertices.empty();
    tr << i << ' ' << n << ' ' << once.graph().vertex_count() << ' ' << (before ? std::to_string(*before) : "-")
       << ' ' << (after ? std::to_string(*after) : "-") << '\n';
  }
  return {optimum_mismatch == 0 && not_idempotent == 0,
          fmt("200 instances (%ld reduced): %ld optimum changes, %ld not idempotent", shrunk, optimum_mismatch,
              not_idempotent),
          tr.str()};
}

// Generated suite for the heuristic comparison: uniform points, kappa in
// {3, 5, 10}, both cost functions, all prize rules, alpha in {0.25, 0.5, 0.75}.
std::vector<Instance> heuristic_suite() {
  std::vector<Instance> out;
  const int kappas[] = {3, 5, 10};
  const double alphas[] = {0.25, 0.5, 0.75};
  for (int i = 0; i < 300; ++i) {
    GenerationSpec s;
    s.base = "random:60";
    s.kappa = kappas[i % 3];
    s.cost = (i / 3) % 2 ? CostMode::Euc : CostMode::Mst;
    s.prize = static_cast<PrizeMode>((i / 6) % 3);
    s.alpha = alphas[(i / 18) % 3];
    s.seed = kSeed + 7000 + static_cast<std::uint64_t>(i);
    out.push_back(generate(s));
  }
  return out;
}

Outcome criterion7() {
  const auto instances = heuristic_suite();
  bench::SuiteOptions opt;
  opt.algorithms = {bench::Algorithm::BfsEc, bench::Algorithm::SblPec};
  opt.lb_budget = 0;
  const auto records = bench::run_suite(instances, opt);
  std::ostringstream tr;
  long both = 0;
  long no_worse = 0;
  for (std::size_t i = 0; i < records.size(); i += 2) {
    const auto& bfs = records[i];
    const auto& pec = records[i + 1];
    if (bfs.feasible() && pec.feasible()) {
      ++both;
      no_worse += *pec.cost <= *bfs.cost;
    }
    tr << bfs.instance << ' ' << bfs.status << ' ' << (bfs.cost ? std::to_string(*bfs.cost) : "-") << ' '
       << pec.status << ' ' << (pec.cost ? std::to_string(*pec.cost) : "-") << '\n';
  }
  bool feas_ok = true;
  std::string groups;
  for (bench::GroupBy by : {bench::GroupBy::Kappa, bench::GroupBy::Alpha}) {
    const auto rows = bench::aggregate(records, by);
    for (std::size_t k = 0; k + 1 < rows.size(); k += 2) {
      const auto& bfs = rows[k].algorithm == "BFS-EC" ? rows[k] : rows[k + 1];
      const auto& pec = rows[k].algorithm == "SBL-PEC" ? rows[k] : rows[k + 1];
      feas_ok = feas_ok && pec.feas >= bfs.feas;
      groups += fmt(" %s=%s:%ld>=%ld", bench::to_string(by), pec.group.c_str(), pec.feas, bfs.feas);
    }
  }
  const double share = both ? static_cast<double>(no_worse) / static_cast<double>(both) : 0.0;
  return {feas_ok && share >= 0.9,
          fmt("FEAS(SBL-PEC) >= FEAS(BFS-EC) in every group:%s; cost no worse on %ld/%ld = %.3f", groups.c_str(),
              no_worse, both, share),
          tr.str()};
}

// Desk suite for the cost-cover comparison: sparse MST-cost instances where
// shortest paths and disjoint pairs differ.
std::vector<Instance> cost_cover_suite() {
  std::vector<Instance> out;
  const int kappas[] = {2, 3, 5};
  for (int i = 0; i < 90; ++i) {
    GenerationSpec s;
    s.base = "random:40";
    s.kappa = kappas[i % 3];
    s.cost = (i / 3) % 2 ? CostMode::Euc : CostMode::Mst;
    s.prize = static_cast<PrizeMode>((i / 6) % 3);
    s.alpha = (i / 18) % 2 ? 0.25 : 0.5;
    s.seed = kSeed + 9000 + static_cast<std::uint64_t>(i);
    out.push_back(generate(s));
  }
  return out;
}

Outcome criterion8() {
  const auto instances = cost_cover_suite();
  bench::SuiteOptions opt;
  opt.algorithms = {bench::Algorithm::BcSpcc, bench::Algorithm::BcDpcc};
  opt.lb_budget = 0;
  opt.run.solver.presolve_only = true;
  const auto records = bench::run_suite(instances, opt);
  std::ostringstream tr;
  for (const auto& r : records) tr << r.instance << ' ' << r.algorithm << ' ' << *r.pre_cuts << '\n';
  bool ordered = true;
  bool strict = false;
  std::string groups;
  const auto rows = bench::aggregate(records, bench::GroupBy::Kappa);
  for (std::size_t k = 0; k + 1 < rows.size(); k += 2) {
    const auto& spcc = rows[k].algorithm == "BC-SPCC" ? rows[k] : rows[k + 1];
    const auto& dpcc = rows[k].algorithm == "BC-DPCC" ? rows[k] : rows[k + 1];
    ordered = ordered && dpcc.mean_pre_cuts >= spcc.mean_pre_cuts;
    strict = strict || dpcc.mean_pre_cuts > spcc.mean_pre_cuts;
    groups += fmt(" kappa=%s: %.3f vs %.3f;", dpcc.group.c_str(), dpcc.mean_pre_cuts, spcc.mean_pre_cuts);
  }
  return {ordered && strict,
          fmt("mean PRE-CUTS dpcc vs spcc over %zu instances:%s strict gap %s", instances.size(), groups.c_str(),
              strict ? "yes" : "no"),
          tr.str()};
}

Outcome criterion9(const OracleSuiteLog& log) {
  long weak = 0;
  long invalid = 0;
  long checked_against_tour = 0;
  for (const LoggedCut& c : log.cuts) {
    weak += !(c.violation > kViolationTol);
    auto it = log.final_tours.find({c.instance, static_cast<int>(c.mode)});
    if (it == log.final_tours.end()) continue;
    const SparseGraph& g = log.instances[c.instance].graph();
    const auto [x, y] = incidence(g, it->second);
    ++checked_against_tour;
    invalid += sec_violation(g, c.cut, x, y) > 1e-9;
  }
  return {weak == 0 && invalid == 0 && !log.cuts.empty(),
          fmt("%zu SECs logged: %ld not violated by their point (margin 1e-6), %ld of %ld violated by the final tour",
              log.cuts.size(), weak, invalid, checked_against_tour),
          ""};
}

Outcome criterion10() {
  const double g = gap(12.0, 10.0);
  const Prize p1 = mod_prize(1);
  const Prize p2 = mod_prize(2);
  const std::vector<double> flat{0.5, 0.5, 0.5, 0.5, 0.5, 0.5};
  const bool tail = tailing_off(flat, 5, 0.001);
  return {g == 0.2 && p1 == 15 && p2 == 56 && tail,
          fmt("gap(12,10)=%.17g, p(1)=%lld, p(2)=%lld, tailing_off(constant)=%s", g, static_cast<long long>(p1),
              static_cast<long long>(p2), tail ? "true" : "false"),
          ""};
}

void report(int id, const char* name, const Outcome& o) {
  std::printf("%s %2d %s: %s\n", o.pass ? "PASS" : "FAIL", id, name, o.detail.c_str());
  std::fflush(stdout);
}

struct Run {
  std::vector<Outcome> outcomes;  // criteria 1..8
};

Run run_one_to_eight(OracleSuiteLog& log, bool print) {
  using Fn = std::function<Outcome()>;
  const std::vector<std::pair<const char*, Fn>> checks = {
      {"oracle equivalence", [&] { return criterion1(log); }},
      {"cost-cover dominance", [&] { return criterion2(log); }},
      {"disjoint pair equals cheapest tour", criterion3},
      {"metric edges", criterion4},
      {"cost-function signatures", criterion5},
      {"preprocessing safety", criterion6},
      {"heuristic ordering", criterion7},
      {"pre-cuts ordering", criterion8},
  };
  Run run;
  for (std::size_t k = 0; k < checks.size(); ++k) {
    run.outcomes.push_back(checks[k].second());
    if (print) report(static_cast<int>(k + 1), checks[k].first, run.outcomes.back());
  }
  return run;
}

}  // namespace

int main() {
  detail::Stopwatch clock;
  OracleSuiteLog log;
  const Run first = run_one_to_eight(log, true);
  const Outcome c9 = criterion9(log);
  report(9, "SEC soundness", c9);
  const Outcome c10 = criterion10();
  report(10, "formula spot checks", c10);

  OracleSuiteLog log2;
  const Run second = run_one_to_eight(log2, false);
  int differing = 0;
  std::size_t bytes = 0;
  for (std::size_t k = 0; k < first.outcomes.size(); ++k) {
    bytes += first.outcomes[k].transcript.size();
    if (first.outcomes[k].transcript != second.outcomes[k].transcript) {
      ++differing;
      std::printf("  note: criterion %zu transcripts differ between runs\n", k + 1);
    }
  }
  const Outcome c11{differing == 0, fmt("criteria 1-8 rerun, %zu transcript bytes compared, %d differ", bytes, differing),
                    ""};
  report(11, "determinism", c11);

  bool all = c9.pass && c10.pass && c11.pass;
  for (const auto& o : first.outcomes) all = all && o.pass;
  std::printf("%s (%.1f s)\n", all ? "all criteria pass" : "some criteria fail", clock.seconds());
  return all ? 0 : 1;
}
