#pragma once

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "pctsp/bench/runner.hpp"
#include "pctsp/graph/io.hpp"

namespace pctsp::bench {

struct SuiteOptions {
  std::vector<Algorithm> algorithms{Algorithm::Sbl, Algorithm::BfsEc, Algorithm::SblPec};
  RunOptions run;
  /// Budget of the DPCC run that supplies the heuristic GAP lower bound;
  /// 0 disables it and leaves heuristic GAP undefined.
  double lb_budget = 60.0;
  long lb_node_budget = 0;
  int jobs = 0;  // 0: default_jobs()
};

/// PCTSP_JOBS when set to a positive integer, else the hardware thread count.
inline int default_jobs() {
  if (const char* env = std::getenv("PCTSP_JOBS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

/// Instance files (*.json) in a directory, sorted by path.
inline std::vector<std::filesystem::path> instance_files(const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> out;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") out.push_back(entry.path());
  }
  std::sort(out.begin(), out.end());
  if (out.empty()) fail(Errc::Precondition, "no instance files in " + dir.string());
  return out;
}

/// Runs every algorithm on every instance. Rows come out in instance order,
/// then algorithm order, whatever the number of workers.
inline std::vector<RunRecord> run_suite(const std::vector<Instance>& instances, const SuiteOptions& opt) {
  const std::size_t per = opt.algorithms.size();
  std::vector<RunRecord> out(instances.size() * per);
  const bool wants_lb =
      opt.lb_budget > 0 && std::any_of(opt.algorithms.begin(), opt.algorithms.end(), is_heuristic);
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_lock;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next++;
      if (i >= instances.size()) return;
      try {
        RunOptions run = opt.run;
        if (wants_lb) run.heuristic_lower_bound = heuristic_lower_bound(instances[i], opt.lb_budget, opt.lb_node_budget);
        for (std::size_t k = 0; k < per; ++k) out[i * per + k] = run_one(instances[i], opt.algorithms[k], run);
      } catch (...) {
        std::lock_guard lock(error_lock);
        if (!error) error = std::current_exception();
        next = instances.size();
      }
    }
  };
  const int jobs = std::max(1, std::min<int>(opt.jobs > 0 ? opt.jobs : default_jobs(), static_cast<int>(instances.size())));
  std::vector<std::thread> pool;
  for (int t = 1; t < jobs; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
  return out;
}

}  // namespace pctsp::bench
