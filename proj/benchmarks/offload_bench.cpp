#include <benchmark/benchmark.h>

#include "offload/baselines.hpp"
#include "offload/evaluator.hpp"
#include "offload/optimizer.hpp"

using namespace offload;

namespace {

Scenario world(int imds) {
  ScenarioConfig c;
  c.num_imds = imds;
  return generate_scenario(c);
}

void BM_Fitness(benchmark::State& state) {
  const auto s = world(static_cast<int>(state.range(0)));
  const auto d = cms(s);
  for (auto _ : state) benchmark::DoNotOptimize(fitness(s, d).fitness);
}
BENCHMARK(BM_Fitness)->Arg(5)->Arg(10)->Arg(20)->Arg(30);

void BM_IwoaStep(benchmark::State& state) {
  const auto s = world(static_cast<int>(state.range(0)));
  OptimizerParams p;
  p.iterations = 1000000;
  auto opt = initialize(s, p);
  for (auto _ : state) step(opt, s, p);
}
BENCHMARK(BM_IwoaStep)->Arg(5)->Arg(10)->Arg(20)->Unit(benchmark::kMillisecond);

void BM_WoaStep(benchmark::State& state) {
  const auto s = world(static_cast<int>(state.range(0)));
  OptimizerParams p;
  p.iterations = 1000000;
  p.variant = Variant::Woa;
  auto opt = initialize(s, p);
  for (auto _ : state) woa_step(opt, s, p);
}
BENCHMARK(BM_WoaStep)->Arg(5)->Arg(10)->Arg(20)->Unit(benchmark::kMillisecond);

void BM_GenerateScenario(benchmark::State& state) {
  ScenarioConfig c;
  for (auto _ : state) {
    ++c.seed;
    benchmark::DoNotOptimize(generate_scenario(c).gains.data());
  }
}
BENCHMARK(BM_GenerateScenario);

}  // namespace

BENCHMARK_MAIN();
