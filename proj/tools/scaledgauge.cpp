// scaledgauge <subcommand> --config <path> [--out <dir>] [--seed <n>] [--workers <n>]

#include <cstdint>
#include <exception>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "scaledgauge/config.hpp"
#include "scaledgauge/runner.hpp"

int main(int argc, char** argv) {
  using namespace scaledgauge;

  CLI::App app{"Scaled-number gauge field experiments"};
  std::string subcommand;
  std::string config_path;
  std::string out_dir;
  std::uint64_t seed = 0;
  int workers = 0;
  app.add_option("subcommand", subcommand, "Experiment to run, or 'all'")
      ->required()
      ->check(CLI::IsMember(subcommand_names()));
  app.add_option("--config", config_path, "JSON configuration file")->required();
  auto* out_opt = app.add_option("--out", out_dir, "Output directory (default: config 'output')");
  auto* seed_opt = app.add_option("--seed", seed, "Override the configuration seed");
  auto* workers_opt = app.add_option("--workers", workers, "Concurrent experiments")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitConfig;
  }

  try {
    ExperimentConfig cfg = load_config(config_path);
    if (*seed_opt) cfg.seed = seed;
    if (*workers_opt) cfg.workers = workers;
    const std::string out = *out_opt ? out_dir : cfg.output;
    return run_subcommand(subcommand, cfg, out, cfg.workers, std::cout);
  } catch (const Error& e) {
    std::cerr << "scaledgauge: " << e.what() << '\n';
    return e.kind() == ErrorKind::kConfig ? kExitConfig : kExitInternal;
  } catch (const std::exception& e) {
    std::cerr << "scaledgauge: internal error: " << e.what() << '\n';
    return kExitInternal;
  }
}
