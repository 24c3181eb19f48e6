#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string_view>
#include <vector>

#include "offload/config_file.hpp"
#include "offload/evaluator.hpp"
#include "offload/optimizer.hpp"
#include "offload/scenario.hpp"

namespace offload {

enum class Algorithm { Iwoa, Woa, Cmt, Cms };

std::string_view to_string(Algorithm a);
Algorithm parse_algorithm(std::string_view name);

enum class SweepVariable { NumImds, PartitionFactor };

std::string_view to_string(SweepVariable v);
SweepVariable parse_sweep_variable(std::string_view name);

struct ExperimentPlan {
  SweepVariable sweep_variable = SweepVariable::NumImds;
  std::vector<double> sweep_values;
  std::vector<std::uint64_t> seeds;
  std::vector<Algorithm> algorithms;
  /// rng_seed and variant are set per run; penalties also score the baselines.
  OptimizerParams optimizer;
  ScenarioConfig scenario;  // base config; seed and the swept field are overridden per run
  std::filesystem::path output_dir;
  bool write_traces = true;
  int threads = 1;  // concurrent runs; outputs do not depend on it
};

void validate(const ExperimentPlan& plan);

/// Plan file keys: sweep_variable, sweep_values, seeds (list, `a..b` ranges
/// allowed), algorithms, population_size, iterations, penalty_alpha,
/// penalty_beta, write_traces, threads, scenario_config (path, relative to
/// `base_dir`), and `scenario.<key>` overrides for any scenario config key.
ExperimentPlan plan_from(const KeyValues& values, const std::filesystem::path& base_dir = {});
ExperimentPlan read_plan(const std::filesystem::path& path);

/// Scenario seed for a run is the plan seed; the optimizer stream is derived
/// from it, so algorithms and sweep values are paired per seed.
std::uint64_t optimizer_seed(std::uint64_t seed);

struct SupportRatios {
  double time = 1.0;
  double cost = 1.0;
};

/// Fraction of devices with delay <= deadline and cost <= max cost.
/// An empty device set counts as fully supported (with a warning).
SupportRatios compute_support_ratios(std::span<const double> delays, std::span<const double> deadlines,
                                     std::span<const double> costs, std::span<const double> max_costs);
SupportRatios compute_support_ratios(const Scenario& scenario, const EvaluationReport& report);

struct RunRecord {
  double sweep_value = 0.0;
  std::uint64_t seed = 0;
  Algorithm algorithm = Algorithm::Iwoa;
  int num_imds = 0;
  double partition_factor = 0.0;
  double total_energy = 0.0;
  double total_delay = 0.0;
  double fitness = 0.0;
  SupportRatios support;
  bool feasible = false;
  double max_share_error = 0.0;
  double wall_time = 0.0;
  std::vector<TracePoint> trace;  // empty for rule-based baselines
};

struct MetricsRow {
  double sweep_value = 0.0;
  Algorithm algorithm = Algorithm::Iwoa;
  int runs = 0;
  double mean_total_delay = 0.0;
  double mean_total_energy = 0.0;
  double time_support_ratio = 0.0;
  double cost_support_ratio = 0.0;
  double mean_best_fitness = 0.0;
  double wall_time = 0.0;  // mean seconds per run
};

struct ExperimentResult {
  std::vector<RunRecord> runs;     // plan order: value, seed, algorithm
  std::vector<MetricsRow> metrics; // plan order: value, algorithm
};

/// Builds the scenario for one run of the plan.
Scenario scenario_for(const ExperimentPlan& plan, double sweep_value, std::uint64_t seed);

RunRecord execute_run(const ExperimentPlan& plan, double sweep_value, std::uint64_t seed, Algorithm algorithm);

/// Runs every (value, seed, algorithm) combination and aggregates per
/// (value, algorithm) in plan order. Writes nothing.
ExperimentResult run_batch(const ExperimentPlan& plan);

/// run_batch plus outputs in plan.output_dir:
///   metrics.csv  sweep_variable,sweep_value,algorithm,runs,mean_total_delay,
///                mean_total_energy,time_support_ratio,cost_support_ratio,mean_best_fitness
///   runs.csv     seed,algorithm,num_imds,partition_factor,total_energy,total_delay,
///                fitness,time_support,cost_support
///   timing.csv   sweep_value,algorithm,seed,wall_time (not reproducible by nature)
///   traces/<sweep_variable>-<value>_seed-<seed>_<ALGORITHM>.csv for IWOA and WOA runs
ExperimentResult run_experiment(const ExperimentPlan& plan);

std::filesystem::path trace_path(const ExperimentPlan& plan, double sweep_value, std::uint64_t seed,
                                 Algorithm algorithm);

}  // namespace offload
