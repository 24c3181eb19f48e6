#include <cstdio>

#include "offload/baselines.hpp"
#include "offload/evaluator.hpp"

int main() {
  offload::ScenarioConfig config;
  config.num_imds = 2;
  const auto scenario = offload::generate_scenario(config);
  const auto report = offload::fitness(scenario, offload::cmt(scenario));
  std::printf("%.6g\n", report.fitness);
  return report.feasible ? 0 : 1;
}
