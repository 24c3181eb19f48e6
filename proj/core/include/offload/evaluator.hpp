#pragma once

#include <vector>

#include "offload/decision.hpp"
#include "offload/scenario.hpp"

namespace offload {

struct Penalties {
  double alpha = 1e4;  // per second of deadline overrun
  double beta = 1e4;   // per k$ of breach-cost overrun

  static Penalties from(const ScenarioConfig& config) { return {config.penalty_alpha, config.penalty_beta}; }
};

/// Everything computed for one decision. Per-task vectors are row-major [imd][task].
struct EvaluationReport {
  double total_energy = 0.0;  // J
  std::vector<double> delay;            // s, per IMD
  std::vector<double> breach_cost;      // k$, per IMD
  std::vector<double> delay_violation;  // max(0, delay - deadline)
  std::vector<double> cost_violation;   // max(0, cost - max cost)
  double fitness = 0.0;
  bool feasible = false;

  std::vector<double> rate;         // bit/s on the chosen BS and channel, per IMD
  std::vector<double> sbs_share;    // cycles/s from the associated SBS (0 for MBS users)
  std::vector<double> mbs_share;    // cycles/s from the MBS
  std::vector<double> local_time;   // s
  std::vector<double> remote_time;  // s

  /// Largest relative gap between a BS's capacity and the sum of the shares
  /// it hands out, over BSs with at least one claimant.
  double max_share_error = 0.0;

  double total_delay() const;
  double time_support_ratio() const;
  double cost_support_ratio() const;
};

/// Probability that an algorithm of protection `level` fails to protect the
/// task: 1 - exp(-risk * (expected - level)) below the expected level, else 0.
double failure_probability(const TaskSpec& task, int level);

/// Aggregates for one (scenario, decision) pair: association counts, per-BS
/// workload denominators and all uplink rates are computed once up front,
/// after which each quantity is a cheap lookup.
///
/// The decision must already be repaired; out-of-range association or
/// channel genes throw std::logic_error. Zero uplink rate with more than
/// data_floor bits to send yields +inf time and energy instead of throwing.
class DecisionContext {
 public:
  DecisionContext(const Scenario& scenario, const DecisionVector& decision);

  const Scenario& scenario() const { return scenario_; }
  const DecisionVector& decision() const { return decision_; }

  double uplink_rate(int imd) const { return rates_[static_cast<std::size_t>(imd)]; }
  double uplink_rate_sbs(int imd) const;
  double uplink_rate_mbs(int imd) const;

  double sbs_compute_share(int imd, int task) const;
  double mbs_compute_share(int imd, int task) const;

  double local_time(int imd, int task) const;
  double remote_time_sbs(int imd, int task) const;
  double remote_time_mbs(int imd, int task) const;
  double remote_time(int imd, int task) const;
  double total_delay(int imd) const;

  double breach_cost(int imd) const;
  double task_energy(int imd, int task) const;
  double total_energy() const;

  EvaluationReport report(const Penalties& penalties) const;

 private:
  std::size_t task_index(int imd, int task) const;
  double sbs_workload(int imd, int task) const;
  double mbs_workload(int imd, int task) const;
  double transfer_time(double bits, double rate) const;
  double compute_sbs_rate(int imd) const;
  double compute_mbs_rate(int imd) const;

  const Scenario& scenario_;
  const DecisionVector& decision_;
  int mbs_users_ = 0;
  std::vector<double> sbs_load_;  // per BS index (entry 0 unused)
  double mbs_load_ = 0.0;
  std::vector<double> rates_;
};

// Single-quantity entry points; each builds its own context.
double uplink_rate_sbs(const Scenario& s, const DecisionVector& d, int imd);
double uplink_rate_mbs(const Scenario& s, const DecisionVector& d, int imd);
double sbs_compute_share(const Scenario& s, const DecisionVector& d, int imd, int task);
double mbs_compute_share(const Scenario& s, const DecisionVector& d, int imd, int task);
double local_time(const Scenario& s, const DecisionVector& d, int imd, int task);
double remote_time_sbs(const Scenario& s, const DecisionVector& d, int imd, int task);
double remote_time_mbs(const Scenario& s, const DecisionVector& d, int imd, int task);
double total_delay(const Scenario& s, const DecisionVector& d, int imd);
double breach_cost(const Scenario& s, const DecisionVector& d, int imd);
double total_energy(const Scenario& s, const DecisionVector& d);

/// Penalised fitness F = -energy - alpha * sum(delay overrun) - beta * sum(cost overrun),
/// with the full report. Pure: identical inputs give bit-identical reports.
EvaluationReport fitness(const Scenario& s, const DecisionVector& d, const Penalties& penalties);
EvaluationReport fitness(const Scenario& s, const DecisionVector& d);

}  // namespace offload
