#include "offload/optimizer.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include <fmt/format.h>

#include "offload/csv.hpp"
#include "offload/parallel.hpp"

namespace offload {
namespace {

constexpr double kPi = std::numbers::pi;

template <typename Fn>
Genome map_genes(const GeneLayout& layout, std::size_t size, Fn&& fn) {
  Genome out(size);
  for (std::size_t g = 0; g < size; ++g) {
    const double v = fn(g);
    out[g] = layout.is_integer(g) ? std::round(v) : v;
  }
  return out;
}

void check_sizes(const GeneLayout& layout, const Genome& a) {
  if (a.size() != layout.size()) {
    throw std::invalid_argument(fmt::format("genome has {} genes, layout expects {}", a.size(), layout.size()));
  }
}

void check_draws(const Genome& a, std::span<const double> r) {
  if (r.size() != a.size()) {
    throw std::invalid_argument(fmt::format("{} draws for {} genes", r.size(), a.size()));
  }
}

std::vector<double> draws(Rng& rng, std::size_t n) {
  std::vector<double> r(n);
  for (auto& x : r) x = rng.uniform();
  return r;
}

void evaluate_all(std::vector<Agent>& out, std::vector<DecisionVector>& positions, const Scenario& scenario,
                  const OptimizerParams& params, OptimizerState& state) {
  out.resize(positions.size());
  parallel_for(positions.size(), params.threads, [&](std::size_t m) {
    out[m] = make_agent(scenario, std::move(positions[m]), params.penalties);
  });
  state.counts.evaluations += static_cast<long>(out.size());
  for (const auto& a : out) state.max_share_error = std::max(state.max_share_error, a.report.max_share_error);
}

// Strictly fitter agents replace the historical best; ties keep the incumbent.
void update_best(OptimizerState& state) {
  for (const auto& a : state.population) {
    if (a.fitness() > state.best.fitness()) state.best = a;
  }
}

void record(OptimizerState& state) {
  state.trace.push_back(
      {state.t, state.best.fitness(), state.best.report.total_energy, state.best.report.feasible});
}

}  // namespace

std::string_view to_string(Variant v) { return v == Variant::Iwoa ? "IWOA" : "WOA"; }

void validate(const OptimizerParams& p) {
  if (p.population_size < 1) throw std::invalid_argument("population_size must be >= 1");
  if (p.iterations < 1) throw std::invalid_argument("iterations must be >= 1");
  if (!(p.penalties.alpha > 0.0) || !(p.penalties.beta > 0.0)) {
    throw std::invalid_argument("penalty factors must be positive");
  }
  if (p.threads < 1) throw std::invalid_argument("threads must be >= 1");
}

Agent make_agent(const Scenario& scenario, DecisionVector position, const Penalties& penalties) {
  Agent a;
  a.report = fitness(scenario, position, penalties);
  a.position = std::move(position);
  return a;
}

Coefficients coefficients(int t, int iterations, double r1, double r2, double r3) {
  const double ratio = static_cast<double>(t) / static_cast<double>(iterations);
  const double phase = ratio * kPi / 2.0;
  Coefficients c;
  c.k1 = std::sin(phase + kPi) + 1.0;
  c.k2 = 2.0 * (2.0 * r1 - 1.0) * (1.0 - std::sin(phase));
  c.k3 = 2.0 * r2;
  const double a3 = (-2.0 - ratio) * r3 + 1.0;
  c.k4 = std::exp(a3 + 5.0 * std::cos(kPi * (1.0 - ratio))) * std::cos(2.0 * a3 * kPi);
  return c;
}

Coefficients coefficients(int t, int iterations, Rng& rng) {
  const double r1 = rng.uniform();
  const double r2 = rng.uniform();
  const double r3 = rng.uniform();
  return coefficients(t, iterations, r1, r2, r3);
}

Genome encircle(const GeneLayout& layout, const Genome& agent, const Genome& best, double k1, double k2, double k3) {
  check_sizes(layout, agent);
  check_sizes(layout, best);
  return map_genes(layout, agent.size(),
                   [&](std::size_t g) { return k1 * best[g] - k2 * std::abs(k3 * best[g] - agent[g]); });
}

Genome spiral(const GeneLayout& layout, const Genome& agent, const Genome& best, double k1, double k3, double k4) {
  check_sizes(layout, agent);
  check_sizes(layout, best);
  return map_genes(layout, agent.size(),
                   [&](std::size_t g) { return k1 * best[g] + k4 * std::abs(k3 * best[g] - agent[g]); });
}

Genome cauchy_search(const GeneLayout& layout, const Genome& agent, double k2, std::span<const double> r) {
  check_sizes(layout, agent);
  check_draws(agent, r);
  return map_genes(layout, agent.size(),
                   [&](std::size_t g) { return agent[g] + k2 * std::tan(kPi * (r[g] - 0.5)); });
}

Genome cauchy_search(const GeneLayout& layout, const Genome& agent, double k2, Rng& rng) {
  return cauchy_search(layout, agent, k2, draws(rng, agent.size()));
}

Genome neighborhood_search(const GeneLayout& layout, const Genome& best, std::span<const double> r) {
  check_sizes(layout, best);
  check_draws(best, r);
  return map_genes(layout, best.size(), [&](std::size_t g) { return best[g] * (1.0 + 0.5 * r[g]); });
}

Genome neighborhood_search(const GeneLayout& layout, const Genome& best, Rng& rng) {
  return neighborhood_search(layout, best, draws(rng, best.size()));
}

double woa_control(int t, int iterations) {
  return 2.0 * (1.0 - static_cast<double>(t) / static_cast<double>(iterations));
}

Genome woa_encircle(const GeneLayout& layout, const Genome& agent, const Genome& target, double a, double c) {
  check_sizes(layout, agent);
  check_sizes(layout, target);
  return map_genes(layout, agent.size(), [&](std::size_t g) { return target[g] - a * std::abs(c * target[g] - agent[g]); });
}

Genome woa_spiral(const GeneLayout& layout, const Genome& agent, const Genome& best, double l) {
  check_sizes(layout, agent);
  check_sizes(layout, best);
  const double shape = std::exp(l) * std::cos(2.0 * kPi * l);
  return map_genes(layout, agent.size(), [&](std::size_t g) { return std::abs(best[g] - agent[g]) * shape + best[g]; });
}

bool greedy_accept(Agent& agent, Agent candidate) {
  if (!(candidate.fitness() > agent.fitness())) return false;
  agent = std::move(candidate);
  return true;
}

OptimizerState initialize(const Scenario& scenario, const OptimizerParams& params) {
  validate(params);
  OptimizerState state{.population = {}, .best = {}, .t = 0, .trace = {}, .rng = Rng(params.rng_seed),
                       .counts = {}, .max_share_error = 0.0};
  auto& rng = state.rng;
  const int u = scenario.num_imds();
  const auto uk = static_cast<std::size_t>(u) * static_cast<std::size_t>(scenario.num_tasks());
  const GeneLayout layout(scenario);
  using Seg = GeneLayout::Segment;

  std::vector<DecisionVector> positions;
  positions.reserve(static_cast<std::size_t>(params.population_size));
  for (int m = 0; m < params.population_size; ++m) {
    Genome g(layout.size());
    for (int i = 0; i < u; ++i) {
      const auto ii = static_cast<std::size_t>(i);
      g[layout.offset(Seg::Bs) + ii] = static_cast<double>(rng.uniform_int(0, scenario.num_sbs()));
      g[layout.offset(Seg::Channel) + ii] = static_cast<double>(rng.uniform_int(1, scenario.num_subchannels()));
      g[layout.offset(Seg::Power) + ii] = scenario.config.max_power * rng.uniform_open_left();
    }
    for (std::size_t j = 0; j < uk; ++j) {
      g[layout.offset(Seg::Crypto) + j] = static_cast<double>(rng.uniform_int(1, scenario.num_crypto()));
      const double offload = scenario.tasks[j].data_size * rng.uniform_open_left();
      g[layout.offset(Seg::Offload) + j] = offload;
      g[layout.offset(Seg::Relay) + j] = offload * rng.uniform_open_left();
    }
    positions.push_back(repair(scenario, g));
  }

  evaluate_all(state.population, positions, scenario, params, state);
  state.best = state.population.front();
  update_best(state);
  return state;
}

void step(OptimizerState& state, const Scenario& scenario, const OptimizerParams& params) {
  const GeneLayout layout(scenario);
  const int t = state.t + 1;
  const auto m_count = state.population.size();
  const Genome best = encode(state.best.position);

  // All random draws happen here, in agent order, before any evaluation.
  std::vector<DecisionVector> moved;
  moved.reserve(m_count);
  for (std::size_t m = 0; m < m_count; ++m) {
    const auto c = coefficients(t, params.iterations, state.rng);
    const double r5 = state.rng.uniform();
    const Genome current = encode(state.population[m].position);
    Genome raw;
    if (r5 < 0.5) {
      if (std::abs(c.k2) >= 1.0) {
        raw = cauchy_search(layout, current, c.k2, state.rng);
        ++state.counts.exploration;
      } else {
        raw = encircle(layout, current, best, c.k1, c.k2, c.k3);
        ++state.counts.encircle;
      }
    } else {
      raw = spiral(layout, current, best, c.k1, c.k3, c.k4);
      ++state.counts.spiral;
    }
    moved.push_back(repair(scenario, raw));
  }
  evaluate_all(state.population, moved, scenario, params, state);
  update_best(state);

  const Genome refined_best = encode(state.best.position);
  std::vector<DecisionVector> nearby;
  nearby.reserve(m_count);
  for (std::size_t m = 0; m < m_count; ++m) {
    nearby.push_back(repair(scenario, neighborhood_search(layout, refined_best, state.rng)));
  }
  std::vector<Agent> candidates;
  evaluate_all(candidates, nearby, scenario, params, state);
  state.counts.neighborhood += static_cast<long>(m_count);
  for (std::size_t m = 0; m < m_count; ++m) greedy_accept(state.population[m], std::move(candidates[m]));
  update_best(state);

  state.t = t;
  record(state);
}

void woa_step(OptimizerState& state, const Scenario& scenario, const OptimizerParams& params) {
  const GeneLayout layout(scenario);
  const int t = state.t + 1;
  const auto m_count = state.population.size();
  const double a = woa_control(t, params.iterations);

  std::size_t leader = 0;
  for (std::size_t m = 1; m < m_count; ++m) {
    if (state.population[m].fitness() > state.population[leader].fitness()) leader = m;
  }
  const Genome best = encode(state.population[leader].position);

  std::vector<DecisionVector> moved;
  moved.reserve(m_count);
  for (std::size_t m = 0; m < m_count; ++m) {
    const double big_a = 2.0 * a * state.rng.uniform() - a;
    const double big_c = 2.0 * state.rng.uniform();
    const double p = state.rng.uniform();
    const double l = state.rng.uniform(-1.0, 1.0);
    const Genome current = encode(state.population[m].position);
    Genome raw;
    if (p < 0.5) {
      if (std::abs(big_a) >= 1.0) {
        const auto r = static_cast<std::size_t>(state.rng.uniform_int(0, static_cast<long>(m_count) - 1));
        raw = woa_encircle(layout, current, encode(state.population[r].position), big_a, big_c);
        ++state.counts.exploration;
      } else {
        raw = woa_encircle(layout, current, best, big_a, big_c);
        ++state.counts.encircle;
      }
    } else {
      raw = woa_spiral(layout, current, best, l);
      ++state.counts.spiral;
    }
    moved.push_back(repair(scenario, raw));
  }
  evaluate_all(state.population, moved, scenario, params, state);
  update_best(state);

  state.t = t;
  record(state);
}

RunResult run(const Scenario& scenario, const OptimizerParams& params) {
  auto state = initialize(scenario, params);
  for (int t = 0; t < params.iterations; ++t) {
    if (params.variant == Variant::Iwoa) {
      step(state, scenario, params);
    } else {
      woa_step(state, scenario, params);
    }
  }
  return {std::move(state.best), std::move(state.trace), state.counts, state.max_share_error};
}

void write_trace_csv(const std::filesystem::path& path, const std::vector<TracePoint>& trace) {
  CsvWriter out(path, {"iteration", "best_fitness", "best_energy", "feasible"});
  for (const auto& p : trace) {
    out.row({std::to_string(p.iteration), csv_number(p.best_fitness), csv_number(p.best_energy),
             p.feasible ? "1" : "0"});
  }
}

}  // namespace offload
