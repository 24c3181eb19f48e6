#include <chrono>
#include <cstdint>
#include <exception>
#include <filesystem>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include "offload/harness.hpp"
#include "offload/oracle.hpp"
#include "offload/scenario.hpp"

namespace fs = std::filesystem;

namespace {

int run_plan(const fs::path& plan_file, const fs::path& out_dir, int threads) {
  auto plan = offload::read_plan(plan_file);
  plan.output_dir = out_dir;
  if (threads > 0) plan.threads = threads;
  spdlog::info("{} values x {} seeds x {} algorithms, {} worker(s)", plan.sweep_values.size(), plan.seeds.size(),
               plan.algorithms.size(), plan.threads);
  const auto result = offload::run_experiment(plan);
  for (const auto& m : result.metrics) {
    spdlog::info("{}={} {}: delay {:.4g} s, energy {:.4g} J, support {:.3f}/{:.3f}, fitness {:.4g}",
                 offload::to_string(plan.sweep_variable), m.sweep_value, offload::to_string(m.algorithm),
                 m.mean_total_delay, m.mean_total_energy, m.time_support_ratio, m.cost_support_ratio,
                 m.mean_best_fitness);
  }
  spdlog::info("wrote {}", (out_dir / "metrics.csv").string());
  return 0;
}

int dump_scenario(const fs::path& config_file, const fs::path& out_dir) {
  const auto scenario = offload::generate_scenario(offload::read_scenario_config(config_file));
  fs::create_directories(out_dir);
  offload::write_scenario_csv(scenario, out_dir);
  spdlog::info("{} IMDs, {} SBSs, N = {}; tables written to {}", scenario.num_imds(), scenario.num_sbs(),
               scenario.num_subchannels(), out_dir.string());
  return 0;
}

int oracle_check(int instances, std::uint64_t seed, double tolerance) {
  const auto started = std::chrono::steady_clock::now();
  const auto summary = offload::oracle::run_check(instances, seed, tolerance);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  fmt::print("{} instances, {} decisions, max relative error {:.3g}, {} mismatches, {:.1f} s\n", summary.instances,
             summary.points, summary.max_relative_error, summary.mismatches, seconds);
  if (!summary.passed()) {
    fmt::print("first mismatch: {}\n", summary.first_mismatch);
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-task offloading simulator for ultra-dense NOMA IoT networks"};
  app.require_subcommand(1);
  std::string level = "info";
  app.add_option("--log-level", level, "trace, debug, info, warn, error or off");

  fs::path plan_file;
  fs::path out_dir;
  int threads = 0;
  auto* run_cmd = app.add_subcommand("run", "Run an experiment plan and write metrics, runs, timing and traces");
  run_cmd->add_option("--plan", plan_file, "key=value plan file")->required()->check(CLI::ExistingFile);
  run_cmd->add_option("--out", out_dir, "output directory")->required();
  run_cmd->add_option("--threads", threads, "concurrent runs (overrides the plan)")->check(CLI::PositiveNumber);

  fs::path config_file;
  fs::path dump_dir;
  auto* dump_cmd = app.add_subcommand("scenario-dump", "Generate a scenario and write it as CSV tables");
  dump_cmd->add_option("--config", config_file, "key=value scenario config")->required()->check(CLI::ExistingFile);
  dump_cmd->add_option("--out", dump_dir, "output directory")->required();

  int instances = 50;
  std::uint64_t seed = 1;
  double tolerance = 1e-9;
  auto* oracle_cmd = app.add_subcommand("oracle-check", "Compare the evaluator with the reference model on tiny worlds");
  oracle_cmd->add_option("--instances", instances, "number of random tiny worlds")->check(CLI::PositiveNumber);
  oracle_cmd->add_option("--seed", seed, "seed for the tiny worlds");
  oracle_cmd->add_option("--tolerance", tolerance, "relative tolerance");

  CLI11_PARSE(app, argc, argv);
  spdlog::set_level(spdlog::level::from_str(level));

  try {
    if (*run_cmd) return run_plan(plan_file, out_dir, threads);
    if (*dump_cmd) return dump_scenario(config_file, dump_dir);
    if (*oracle_cmd) return oracle_check(instances, seed, tolerance);
  } catch (const std::exception& e) {
    spdlog::error("{}", e.what());
    return 2;
  }
  return 0;
}
