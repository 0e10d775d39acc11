#pragma once

// Subcommand dispatch, concurrent execution of independent experiments and
// report emission.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <filesystem>
#include <functional>
#include <mutex>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include "scaledgauge/config.hpp"
#include "scaledgauge/experiments.hpp"
#include "scaledgauge/report.hpp"

namespace scaledgauge {

enum ExitCode : int { kExitPass = 0, kExitCheckFailure = 1, kExitConfig = 2, kExitInternal = 3 };

using ExperimentFn = ExperimentReport (*)(const ExperimentConfig&);

struct ExperimentEntry {
  const char* name;
  ExperimentFn run;
};

inline const std::vector<ExperimentEntry>& experiment_registry() {
  static const std::vector<ExperimentEntry> entries{
      {"axioms", experiment_axioms},
      {"transport", experiment_transport},
      {"integrability", experiment_integrability},
      {"derivative-convergence", experiment_derivative_convergence},
      {"hilbert", experiment_hilbert},
      {"gauge-abelian", experiment_gauge_abelian},
      {"gauge-su2", experiment_gauge_su2},
      {"action", experiment_action},
  };
  return entries;
}

inline std::vector<std::string> subcommand_names() {
  std::vector<std::string> out;
  for (const auto& e : experiment_registry()) out.emplace_back(e.name);
  out.emplace_back("all");
  return out;
}

/// Experiments selected by a subcommand, in registry order.
inline std::vector<ExperimentEntry> select_experiments(const std::string& subcommand) {
  std::vector<ExperimentEntry> out;
  for (const auto& e : experiment_registry()) {
    if (subcommand == "all" || subcommand == e.name) out.push_back(e);
  }
  if (out.empty()) throw Error(ErrorKind::kConfig, "unknown subcommand '" + subcommand + "'");
  return out;
}

/// Per-experiment preconditions on the configuration, checked before any
/// experiment runs.
inline void validate_for(const std::string& experiment, const ExperimentConfig& cfg) {
  if (experiment == "action") {
    if (cfg.lattice.boundary != Boundary::kPeriodic) {
      throw Error(ErrorKind::kConfig, "action needs a periodic lattice");
    }
    if (cfg.lattice.dims < 2) throw Error(ErrorKind::kConfig, "action needs dims >= 2");
  }
}

inline ExperimentReport run_experiment(const ExperimentEntry& entry, const ExperimentConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  ExperimentReport rep = entry.run(cfg);
  rep.duration_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

/// Runs the experiments of a subcommand on up to `workers` threads. Reports
/// come back in registry order whatever the scheduling.
inline std::vector<ExperimentReport> run_experiments(const std::string& subcommand, const ExperimentConfig& cfg,
                                                     int workers) {
  const std::vector<ExperimentEntry> selected = select_experiments(subcommand);
  for (const auto& e : selected) validate_for(e.name, cfg);

  std::vector<ExperimentReport> reports(selected.size());
  std::vector<std::exception_ptr> errors(selected.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < selected.size(); i = next++) {
      try {
        reports[i] = run_experiment(selected[i], cfg);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const auto n_threads = static_cast<std::size_t>(std::clamp(workers, 1, static_cast<int>(selected.size())));
  if (n_threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return reports;
}

inline void write_all_summary(const std::vector<ExperimentReport>& reports, const std::filesystem::path& out_dir) {
  nlohmann::json j;
  j["experiment"] = "all";
  bool pass = true;
  j["experiments"] = nlohmann::json::array();
  for (const auto& r : reports) {
    std::size_t failed = 0;
    for (const auto& c : r.checks) failed += !c.pass;
    j["experiments"].push_back({{"name", r.name}, {"pass", r.passed()}, {"checks", r.checks.size()}, {"failed", failed}});
    pass = pass && r.passed();
  }
  j["pass"] = pass;
  std::filesystem::create_directories(out_dir / "all");
  write_text(out_dir / "all" / "summary.json", j.dump(2) + "\n");
}

/// Runs a subcommand, writes reports and returns the process exit status.
/// Configuration errors surface as Error(kConfig); the caller maps them.
inline int run_subcommand(const std::string& subcommand, const ExperimentConfig& cfg,
                          const std::filesystem::path& out_dir, int workers, std::ostream& log) {
  const std::vector<ExperimentReport> reports = run_experiments(subcommand, cfg, workers);
  bool pass = true;
  for (const auto& r : reports) {
    write_report(r, out_dir);
    for (const auto& c : r.checks) {
      if (!c.pass) {
        log << r.name << ": FAIL " << c.name << " observed " << format_double(c.observed) << ' '
            << to_string(c.relation) << ' ' << format_double(c.expected) << '\n';
      }
    }
    log << r.name << ": " << (r.passed() ? "pass" : "FAIL") << " (" << r.checks.size() << " checks)\n";
    pass = pass && r.passed();
  }
  if (subcommand == "all") write_all_summary(reports, out_dir);
  return pass ? kExitPass : kExitCheckFailure;
}

}  // namespace scaledgauge
