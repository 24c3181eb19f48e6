#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "offload/decision.hpp"
#include "offload/scenario.hpp"

namespace offload::oracle {

/// Quantities recomputed from scratch by the reference model.
struct Reference {
  double energy = 0.0;
  std::vector<double> delay;
  std::vector<double> cost;
  double fitness = 0.0;
};

/// Straight-line reference evaluation of rates, shares, times, breach costs,
/// energy and the penalised fitness. Shares no code with the evaluator.
Reference evaluate(const Scenario& s, const DecisionVector& d, double alpha, double beta);

/// Random tiny world: U <= 2, S <= 2, K <= 2, N <= 2, L = 2.
ScenarioConfig tiny_config(std::uint64_t seed);

/// Calls `visit` for every decision on the discretised grid: every BS,
/// channel and algorithm choice, power in {floor, max/2, max}, and first- and
/// second-stage fractions in {0, 1/2, 1} per device (shared by its tasks).
void enumerate_decisions(const Scenario& s, const std::function<void(const DecisionVector&)>& visit);

struct CheckSummary {
  int instances = 0;
  long long points = 0;
  long long mismatches = 0;
  double max_relative_error = 0.0;
  std::string first_mismatch;

  bool passed() const { return mismatches == 0; }
};

/// Relative difference; equal infinities compare as 0.
double relative_error(double a, double b);

/// Enumerates `instances` tiny worlds and compares evaluator fitness with the
/// reference on every grid point.
CheckSummary run_check(int instances, std::uint64_t seed, double tolerance);

}  // namespace offload::oracle
