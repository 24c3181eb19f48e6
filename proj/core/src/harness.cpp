#include "offload/harness.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>
#include <string>

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include "offload/baselines.hpp"
#include "offload/csv.hpp"
#include "offload/parallel.hpp"
#include "offload/rng.hpp"

namespace offload {
namespace {

constexpr std::uint64_t kOptimizerStream = 0x6f7074;

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "1" || value == "true" || value == "yes") return true;
  if (value == "0" || value == "false" || value == "no") return false;
  throw std::invalid_argument(fmt::format("{}: expected a boolean, got '{}'", key, value));
}

std::vector<std::uint64_t> parse_seeds(const std::string& key, const std::string& value) {
  std::vector<std::uint64_t> seeds;
  for (const auto& token : split_list(value)) {
    if (const auto dots = token.find(".."); dots != std::string::npos) {
      const auto first = parse_unsigned(key, token.substr(0, dots));
      const auto last = parse_unsigned(key, token.substr(dots + 2));
      if (last < first) throw std::invalid_argument(fmt::format("{}: empty range '{}'", key, token));
      for (auto s = first; s <= last; ++s) seeds.push_back(s);
    } else {
      seeds.push_back(parse_unsigned(key, token));
    }
  }
  return seeds;
}

double mean(const std::vector<double>& v) {
  double sum = 0.0;
  for (double x : v) sum += x;
  return sum / static_cast<double>(v.size());
}

}  // namespace

std::string_view to_string(Algorithm a) {
  switch (a) {
    case Algorithm::Iwoa: return "IWOA";
    case Algorithm::Woa: return "WOA";
    case Algorithm::Cmt: return "CMT";
    case Algorithm::Cms: return "CMS";
  }
  return "?";
}

Algorithm parse_algorithm(std::string_view name) {
  for (auto a : {Algorithm::Iwoa, Algorithm::Woa, Algorithm::Cmt, Algorithm::Cms}) {
    if (name == to_string(a)) return a;
  }
  throw std::invalid_argument(fmt::format("unknown algorithm '{}' (expected IWOA, WOA, CMT or CMS)", name));
}

std::string_view to_string(SweepVariable v) {
  return v == SweepVariable::NumImds ? "num_imds" : "partition_factor";
}

SweepVariable parse_sweep_variable(std::string_view name) {
  if (name == "num_imds") return SweepVariable::NumImds;
  if (name == "partition_factor") return SweepVariable::PartitionFactor;
  throw std::invalid_argument(fmt::format("unknown sweep_variable '{}'", name));
}

void validate(const ExperimentPlan& plan) {
  if (plan.sweep_values.empty()) throw std::invalid_argument("plan: sweep_values must not be empty");
  if (plan.seeds.empty()) throw std::invalid_argument("plan: seeds must not be empty");
  if (plan.algorithms.empty()) throw std::invalid_argument("plan: algorithms must not be empty");
  if (plan.threads < 1) throw std::invalid_argument("plan: threads must be >= 1");
  validate(plan.optimizer);
  for (double v : plan.sweep_values) {
    if (plan.sweep_variable == SweepVariable::NumImds && (v < 1.0 || v != std::floor(v))) {
      throw std::invalid_argument(fmt::format("plan: num_imds value {} is not a positive integer", v));
    }
    if (plan.sweep_variable == SweepVariable::PartitionFactor && !(v >= 0.0 && v <= 1.0)) {
      throw std::invalid_argument(fmt::format("plan: partition_factor value {} is outside [0,1]", v));
    }
  }
  // Catch per-run config problems (e.g. num_imds > num_sbs) before any work starts.
  for (double v : plan.sweep_values) {
    auto config = plan.scenario;
    if (plan.sweep_variable == SweepVariable::NumImds) config.num_imds = static_cast<int>(v);
    else config.partition_factor = v;
    validate(config);
  }
}

ExperimentPlan plan_from(const KeyValues& values, const std::filesystem::path& base_dir) {
  ExperimentPlan plan;
  KeyValues scenario_overrides;
  std::filesystem::path scenario_file;
  bool have_alpha = false;
  bool have_beta = false;

  for (const auto& [key, value] : values) {
    if (key == "sweep_variable") plan.sweep_variable = parse_sweep_variable(value);
    else if (key == "sweep_values") plan.sweep_values = parse_double_list(key, value);
    else if (key == "seeds") plan.seeds = parse_seeds(key, value);
    else if (key == "algorithms") {
      plan.algorithms.clear();
      for (const auto& name : split_list(value)) plan.algorithms.push_back(parse_algorithm(name));
    } else if (key == "population_size") plan.optimizer.population_size = static_cast<int>(parse_integer(key, value));
    else if (key == "iterations") plan.optimizer.iterations = static_cast<int>(parse_integer(key, value));
    else if (key == "penalty_alpha") {
      plan.optimizer.penalties.alpha = parse_double(key, value);
      have_alpha = true;
    } else if (key == "penalty_beta") {
      plan.optimizer.penalties.beta = parse_double(key, value);
      have_beta = true;
    } else if (key == "write_traces") plan.write_traces = parse_bool(key, value);
    else if (key == "threads") plan.threads = static_cast<int>(parse_integer(key, value));
    else if (key == "scenario_config") scenario_file = base_dir / value;
    else if (key.starts_with("scenario.")) scenario_overrides.emplace(key.substr(9), value);
    else throw std::invalid_argument(fmt::format("unknown plan key '{}'", key));
  }

  // The swept field is set per run, so the base config is only checked once
  // each sweep value is in place (by validate(plan) below).
  ScenarioConfig base;
  if (!scenario_file.empty()) base = apply_scenario_keys(read_key_values(scenario_file));
  plan.scenario = apply_scenario_keys(scenario_overrides, base);
  if (!have_alpha) plan.optimizer.penalties.alpha = plan.scenario.penalty_alpha;
  if (!have_beta) plan.optimizer.penalties.beta = plan.scenario.penalty_beta;
  plan.scenario.penalty_alpha = plan.optimizer.penalties.alpha;
  plan.scenario.penalty_beta = plan.optimizer.penalties.beta;
  validate(plan);
  return plan;
}

ExperimentPlan read_plan(const std::filesystem::path& path) {
  return plan_from(read_key_values(path), path.parent_path());
}

std::uint64_t optimizer_seed(std::uint64_t seed) { return derive_seed(seed, kOptimizerStream); }

SupportRatios compute_support_ratios(std::span<const double> delays, std::span<const double> deadlines,
                                     std::span<const double> costs, std::span<const double> max_costs) {
  if (delays.size() != deadlines.size() || costs.size() != max_costs.size() || delays.size() != costs.size()) {
    throw std::invalid_argument("support ratios: mismatched per-device vectors");
  }
  if (delays.empty()) {
    spdlog::warn("support ratios requested for an empty device set; reporting full support");
    return {};
  }
  std::size_t on_time = 0;
  std::size_t within_cost = 0;
  for (std::size_t i = 0; i < delays.size(); ++i) {
    if (delays[i] <= deadlines[i]) ++on_time;
    if (costs[i] <= max_costs[i]) ++within_cost;
  }
  const auto n = static_cast<double>(delays.size());
  return {static_cast<double>(on_time) / n, static_cast<double>(within_cost) / n};
}

SupportRatios compute_support_ratios(const Scenario& scenario, const EvaluationReport& report) {
  return compute_support_ratios(report.delay, scenario.deadlines, report.breach_cost, scenario.max_costs);
}

Scenario scenario_for(const ExperimentPlan& plan, double sweep_value, std::uint64_t seed) {
  auto config = plan.scenario;
  config.seed = seed;
  if (plan.sweep_variable == SweepVariable::NumImds) {
    config.num_imds = static_cast<int>(sweep_value);
  } else {
    config.partition_factor = sweep_value;
  }
  return generate_scenario(config);
}

RunRecord execute_run(const ExperimentPlan& plan, double sweep_value, std::uint64_t seed, Algorithm algorithm) {
  const auto started = std::chrono::steady_clock::now();
  const auto scenario = scenario_for(plan, sweep_value, seed);

  RunRecord rec;
  rec.sweep_value = sweep_value;
  rec.seed = seed;
  rec.algorithm = algorithm;
  rec.num_imds = scenario.num_imds();
  rec.partition_factor = scenario.config.partition_factor;

  EvaluationReport report;
  if (algorithm == Algorithm::Iwoa || algorithm == Algorithm::Woa) {
    auto params = plan.optimizer;
    params.rng_seed = optimizer_seed(seed);
    params.variant = algorithm == Algorithm::Iwoa ? Variant::Iwoa : Variant::Woa;
    params.threads = 1;
    auto result = run(scenario, params);
    report = std::move(result.best.report);
    rec.trace = std::move(result.trace);
    rec.max_share_error = result.max_share_error;
  } else {
    const auto decision = algorithm == Algorithm::Cmt ? cmt(scenario) : cms(scenario);
    report = fitness(scenario, decision, plan.optimizer.penalties);
    rec.max_share_error = report.max_share_error;
  }

  rec.total_energy = report.total_energy;
  rec.total_delay = report.total_delay();
  rec.fitness = report.fitness;
  rec.support = compute_support_ratios(scenario, report);
  rec.feasible = report.feasible;
  rec.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return rec;
}

ExperimentResult run_batch(const ExperimentPlan& plan) {
  validate(plan);
  struct Job {
    double value;
    std::uint64_t seed;
    Algorithm algorithm;
  };
  std::vector<Job> jobs;
  for (double v : plan.sweep_values) {
    for (auto seed : plan.seeds) {
      for (auto a : plan.algorithms) jobs.push_back({v, seed, a});
    }
  }

  ExperimentResult result;
  result.runs.resize(jobs.size());
  parallel_for(jobs.size(), plan.threads, [&](std::size_t j) {
    result.runs[j] = execute_run(plan, jobs[j].value, jobs[j].seed, jobs[j].algorithm);
  });

  const auto n_seeds = plan.seeds.size();
  const auto n_algs = plan.algorithms.size();
  for (std::size_t vi = 0; vi < plan.sweep_values.size(); ++vi) {
    for (std::size_t ai = 0; ai < n_algs; ++ai) {
      std::vector<double> delay, energy, time_ratio, cost_ratio, fit, wall;
      for (std::size_t si = 0; si < n_seeds; ++si) {
        const auto& r = result.runs[(vi * n_seeds + si) * n_algs + ai];
        delay.push_back(r.total_delay);
        energy.push_back(r.total_energy);
        time_ratio.push_back(r.support.time);
        cost_ratio.push_back(r.support.cost);
        fit.push_back(r.fitness);
        wall.push_back(r.wall_time);
      }
      result.metrics.push_back({plan.sweep_values[vi], plan.algorithms[ai], static_cast<int>(n_seeds), mean(delay),
                                mean(energy), mean(time_ratio), mean(cost_ratio), mean(fit), mean(wall)});
    }
  }
  return result;
}

std::filesystem::path trace_path(const ExperimentPlan& plan, double sweep_value, std::uint64_t seed,
                                 Algorithm algorithm) {
  return plan.output_dir / "traces" /
         fmt::format("{}-{}_seed-{}_{}.csv", to_string(plan.sweep_variable), sweep_value, seed, to_string(algorithm));
}

ExperimentResult run_experiment(const ExperimentPlan& plan) {
  validate(plan);
  if (plan.output_dir.empty()) throw std::invalid_argument("plan: output directory not set");
  std::filesystem::create_directories(plan.output_dir);
  if (plan.write_traces) std::filesystem::create_directories(plan.output_dir / "traces");
  // Fail on an unwritable directory before spending time on the runs.
  { CsvWriter probe(plan.output_dir / "metrics.csv", {"sweep_variable"}); }

  auto result = run_batch(plan);

  {
    CsvWriter metrics(plan.output_dir / "metrics.csv",
                      {"sweep_variable", "sweep_value", "algorithm", "runs", "mean_total_delay", "mean_total_energy",
                       "time_support_ratio", "cost_support_ratio", "mean_best_fitness"});
    for (const auto& m : result.metrics) {
      metrics.row({std::string(to_string(plan.sweep_variable)), csv_number(m.sweep_value),
                   std::string(to_string(m.algorithm)), std::to_string(m.runs), csv_number(m.mean_total_delay),
                   csv_number(m.mean_total_energy), csv_number(m.time_support_ratio),
                   csv_number(m.cost_support_ratio), csv_number(m.mean_best_fitness)});
    }
  }
  {
    CsvWriter runs(plan.output_dir / "runs.csv", {"seed", "algorithm", "num_imds", "partition_factor", "total_energy",
                                                  "total_delay", "fitness", "time_support", "cost_support"});
    for (const auto& r : result.runs) {
      runs.row({std::to_string(r.seed), std::string(to_string(r.algorithm)), std::to_string(r.num_imds),
                csv_number(r.partition_factor), csv_number(r.total_energy), csv_number(r.total_delay),
                csv_number(r.fitness), csv_number(r.support.time), csv_number(r.support.cost)});
    }
  }
  {
    CsvWriter timing(plan.output_dir / "timing.csv", {"sweep_value", "algorithm", "seed", "wall_time"});
    for (const auto& r : result.runs) {
      timing.row({csv_number(r.sweep_value), std::string(to_string(r.algorithm)), std::to_string(r.seed),
                  csv_number(r.wall_time)});
    }
  }
  if (plan.write_traces) {
    for (const auto& r : result.runs) {
      if (r.trace.empty()) continue;
      write_trace_csv(trace_path(plan, r.sweep_value, r.seed, r.algorithm), r.trace);
    }
  }
  return result;
}

}  // namespace offload
