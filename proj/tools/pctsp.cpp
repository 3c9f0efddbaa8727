#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pctsp/bench/aggregate.hpp"
#include "pctsp/bench/stats.hpp"
#include "pctsp/bench/suite.hpp"
#include "pctsp/graph/io.hpp"
#include "pctsp/instances/spec.hpp"

namespace fs = std::filesystem;
using namespace pctsp;
using namespace pctsp::bench;

namespace {

struct Globals {
  std::uint64_t seed = 0;
  std::string out;
  std::string format = "json";
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Errc::ParseError, "cannot read " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(Errc::ParseError, "cannot write " + path.string());
  out << text;
  if (!out) fail(Errc::ParseError, "write failed for " + path.string());
}

// To --out when given, else standard output.
void emit(const Globals& g, const std::string& text) {
  if (g.out.empty()) {
    std::cout << text << std::flush;
  } else {
    write_file(g.out, text);
  }
}

std::string markdown_record(const RunRecord& r) {
  std::string header = kCsvColumns;
  std::string row = csv_row(r);
  std::string out = "|";
  std::string sep = "|";
  for (char c : header) {
    out += c == ',' ? '|' : c;
    if (c == ',') sep += "---|";
  }
  out += "|\n" + sep + "---|\n|";
  for (char c : row) out += c == ',' ? '|' : c;
  return out + "|\n";
}

std::string render_records(const Globals& g, const std::vector<RunRecord>& records) {
  if (g.format == "csv") return to_csv(records);
  if (g.format == "md") {
    std::string out;
    for (const auto& r : records) out += markdown_record(r);
    return out;
  }
  if (records.size() == 1) return to_json(records.front()).dump() + "\n";
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : records) arr.push_back(to_json(r));
  return arr.dump(1) + "\n";
}

struct SolveFlags {
  std::string cost_cover = "none";
  double time_limit = 0.0;  // 0: unlimited
  int tau = 5;
  double gamma = 0.001;
  int delta = 1;
  long max_nodes = 0;
  std::string trace;
};

SolverConfig solver_config(const SolveFlags& f) {
  SolverConfig cfg;
  if (f.time_limit > 0) cfg.time_limit = f.time_limit;
  cfg.tau = f.tau;
  cfg.gamma = f.gamma;
  cfg.branching.strong_depth = f.delta;
  cfg.max_nodes = f.max_nodes;
  return cfg;
}

Algorithm solver_algorithm(const std::string& cover) {
  if (cover == "none") return Algorithm::BcNone;
  if (cover == "spcc") return Algorithm::BcSpcc;
  if (cover == "dpcc") return Algorithm::BcDpcc;
  fail(Errc::ParseError, "unknown cost-cover mode '" + cover + "'");
}

int cmd_generate(const Globals& g, const std::string& manifest) {
  if (g.out.empty()) fail(Errc::Precondition, "generate needs --out DIR");
  const auto specs = parse_manifest(read_file(manifest));
  fs::create_directories(g.out);
  const fs::path base_dir = fs::path(manifest).parent_path();
  for (const auto& spec : specs) {
    try {
      const Instance inst = generate(spec, base_dir);
      write_file(fs::path(g.out) / (inst.name() + ".json"), instance_to_string(inst));
    } catch (const Error& e) {
      fail(e.code(), "spec '" + (spec.name.empty() ? default_name(spec) : spec.name) + "': " + e.what());
    }
  }
  std::cerr << "generated " << specs.size() << " instance(s) in " << g.out << "\n";
  return 0;
}

int cmd_stats(const Globals& g, const std::vector<std::string>& paths) {
  std::vector<DatasetStats> all;
  for (const auto& p : paths) all.push_back(dataset_stats(load_instance(p)));
  std::string text;
  if (g.format == "csv" || g.format == "md") {
    const bool md = g.format == "md";
    std::string header = kStatsColumns;
    if (md) {
      text = "| " + header + " |\n";
      for (auto& c : text)
        if (c == ',') c = '|';
      text += "|";
      for (int i = 0; i < 9; ++i) text += "---|";
      text += "\n";
    } else {
      text = header + "\r\n";
    }
    for (const auto& s : all) {
      std::string row = stats_csv_row(s);
      if (md) {
        for (auto& c : row)
          if (c == ',') c = '|';
        text += "| " + row + " |\n";
      } else {
        text += row + "\r\n";
      }
    }
  } else {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& s : all) j.push_back(to_json(s));
    text = (all.size() == 1 ? j.front() : j).dump(1) + "\n";
  }
  emit(g, text);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Prize-collecting TSP toolkit: instance generation, heuristics, branch & cut, benchmarking"};
  app.require_subcommand(1);
  Globals globals;
  app.add_option("--seed", globals.seed, "Seed recorded in run records");
  app.add_option("--out", globals.out, "Output file (directory for generate and bench)");
  app.add_option("--format", globals.format, "Output format")->check(CLI::IsMember({"csv", "md", "json"}));
  app.fallthrough();

  std::string manifest;
  auto* gen = app.add_subcommand("generate", "Write one instance file per manifest spec");
  gen->add_option("manifest", manifest, "JSON manifest")->required();

  std::string instance_path;
  std::string algorithm = "sbl-pec";
  bool emit_tour = false;
  auto* heur = app.add_subcommand("heuristic", "Run a heuristic on one instance");
  heur->add_option("instance", instance_path)->required();
  heur->add_option("--algorithm,-a", algorithm, "sbl | bfs-ec | sbl-pec");
  heur->add_flag("--emit-tour", emit_tour, "Include the tour (external ids)");

  SolveFlags sf;
  auto* solve = app.add_subcommand("solve", "Run branch & cut on one instance");
  solve->add_option("instance", instance_path)->required();
  solve->add_option("--cost-cover", sf.cost_cover)->check(CLI::IsMember({"none", "spcc", "dpcc"}));
  solve->add_option("--time-limit", sf.time_limit, "Seconds; 0 for none");
  solve->add_option("--tau", sf.tau, "Tailing-off window");
  solve->add_option("--gamma", sf.gamma, "Tailing-off threshold");
  solve->add_option("--delta", sf.delta, "Strong-branching depth");
  solve->add_option("--max-nodes", sf.max_nodes, "Node limit; 0 for none");
  solve->add_option("--trace", sf.trace, "Per-node JSON lines to this file ('-' for stderr)");
  solve->add_flag("--emit-tour", emit_tour);

  int oracle_limit = 14;
  auto* oracle = app.add_subcommand("oracle", "Exhaustive search on a small instance");
  oracle->add_option("instance", instance_path)->required();
  oracle->add_option("--limit", oracle_limit, "Largest vertex count after preprocessing");
  oracle->add_flag("--emit-tour", emit_tour);

  std::string bench_dir;
  std::vector<std::string> algorithms{"sbl", "bfs-ec", "sbl-pec"};
  std::string group_by = "kappa";
  int jobs = 0;
  double lb_budget = 60.0;
  long lb_nodes = 0;
  auto* bench = app.add_subcommand("bench", "Run algorithms over a directory of instances and aggregate");
  bench->add_option("dir", bench_dir)->required();
  bench->add_option("--algorithms", algorithms, "Algorithm ids")->delimiter(',');
  bench->add_option("--group-by", group_by)->check(CLI::IsMember({"kappa", "alpha", "quota", "none"}));
  bench->add_option("--jobs", jobs, "Worker threads (default: PCTSP_JOBS or all cores)");
  bench->add_option("--lb-budget", lb_budget, "Seconds for the lower-bound run behind heuristic GAP; 0 disables");
  bench->add_option("--lb-nodes", lb_nodes, "Node limit for the lower-bound run; 0 for none");
  double bench_time_limit = 60.0;
  bench->add_option("--time-limit", bench_time_limit, "Branch & cut seconds per run; 0 for none");
  bench->add_option("--delta", sf.delta);

  std::vector<std::string> stat_paths;
  auto* stats = app.add_subcommand("stats", "Dataset statistics");
  stats->add_option("instances", stat_paths)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    RunOptions run;
    run.seed = globals.seed;
    run.emit_tour = emit_tour;
    if (gen->parsed()) return cmd_generate(globals, manifest);
    if (stats->parsed()) return cmd_stats(globals, stat_paths);
    if (heur->parsed()) {
      const Algorithm a = parse_algorithm(algorithm);
      if (!is_heuristic(a)) fail(Errc::ParseError, "'" + algorithm + "' is not a heuristic");
      emit(globals, render_records(globals, {run_heuristic(load_instance(instance_path), a, run)}));
      return 0;
    }
    if (solve->parsed()) {
      run.solver = solver_config(sf);
      std::unique_ptr<std::ofstream> trace_file;
      std::ostream* trace = nullptr;
      if (sf.trace == "-") {
        trace = &std::cerr;
      } else if (!sf.trace.empty()) {
        trace_file = std::make_unique<std::ofstream>(sf.trace, std::ios::binary);
        if (!*trace_file) fail(Errc::ParseError, "cannot write " + sf.trace);
        trace = trace_file.get();
      }
      if (trace) {
        run.on_node = [trace](const NodeTrace& t) {
          nlohmann::json j = {{"node", t.node},
                              {"depth", t.depth},
                              {"lp_objective", std::isfinite(t.lp_objective) ? nlohmann::json(t.lp_objective)
                                                                             : nlohmann::json(nullptr)},
                              {"cuts_added", t.cuts_added},
                              {"outcome", t.outcome}};
          *trace << j.dump() << "\n";
        };
      }
      const Instance inst = load_instance(instance_path);
      emit(globals, render_records(globals, {run_solver(inst, solver_algorithm(sf.cost_cover), run)}));
      return 0;
    }
    if (oracle->parsed()) {
      run.oracle_limit = oracle_limit;
      emit(globals, render_records(globals, {run_oracle(load_instance(instance_path), run)}));
      return 0;
    }
    if (bench->parsed()) {
      SuiteOptions opt;
      opt.algorithms.clear();
      for (const auto& a : algorithms) opt.algorithms.push_back(parse_algorithm(a));
      sf.time_limit = bench_time_limit;
      run.solver = solver_config(sf);
      opt.run = run;
      opt.lb_budget = lb_budget;
      opt.lb_node_budget = lb_nodes;
      opt.jobs = jobs;
      const GroupBy by = parse_group_by(group_by);
      std::vector<Instance> instances;
      for (const auto& path : instance_files(bench_dir)) instances.push_back(load_instance(path.string()));
      const auto records = run_suite(instances, opt);
      const auto rows = aggregate(records, by);
      if (!globals.out.empty()) {
        fs::create_directories(globals.out);
        write_file(fs::path(globals.out) / "runs.csv", to_csv(records));
        write_file(fs::path(globals.out) / "aggregate.csv", aggregate_csv(rows, by));
        write_file(fs::path(globals.out) / "aggregate.md", aggregate_markdown(rows, by));
      }
      if (globals.format == "csv") {
        std::cout << to_csv(records);
      } else if (globals.format == "md") {
        std::cout << aggregate_markdown(rows, by);
      } else {
        nlohmann::json j = {{"runs", nlohmann::json::array()}, {"aggregate", nlohmann::json::array()}};
        for (const auto& r : records) j["runs"].push_back(to_json(r));
        for (const auto& r : rows) j["aggregate"].push_back(to_json(r));
        std::cout << j.dump(1) << "\n";
      }
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
