#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string_view>
#include <vector>

#include "offload/decision.hpp"
#include "offload/evaluator.hpp"
#include "offload/rng.hpp"
#include "offload/scenario.hpp"

namespace offload {

enum class Variant { Iwoa, Woa };

std::string_view to_string(Variant v);

struct OptimizerParams {
  int population_size = 32;
  int iterations = 500;
  Penalties penalties;
  std::uint64_t rng_seed = 1;
  Variant variant = Variant::Iwoa;
  /// Workers for fitness evaluation. Results do not depend on this value.
  int threads = 1;
};

void validate(const OptimizerParams& params);

/// A whale: a repaired decision plus its evaluation.
struct Agent {
  DecisionVector position;
  EvaluationReport report;

  double fitness() const { return report.fitness; }
};

Agent make_agent(const Scenario& scenario, DecisionVector position, const Penalties& penalties);

struct Coefficients {
  double k1 = 0.0;  // nonlinear weight on the best position, 1 -> 0
  double k2 = 0.0;  // signed step size, |k2| <= 2 (1 - sin(t pi / 2T))
  double k3 = 0.0;  // random scaling of the best position, [0, 2)
  double k4 = 0.0;  // adaptive spiral amplitude
};

/// Adaptive weights for iteration t of T from uniforms r1, r2, r3.
Coefficients coefficients(int t, int iterations, double r1, double r2, double r3);
Coefficients coefficients(int t, int iterations, Rng& rng);

// Search operators. They return raw genomes (integer genes rounded, nothing
// clamped); callers pass the result through repair().
Genome encircle(const GeneLayout& layout, const Genome& agent, const Genome& best, double k1, double k2, double k3);
Genome spiral(const GeneLayout& layout, const Genome& agent, const Genome& best, double k1, double k3, double k4);
/// Per-gene Cauchy mutation: x + k2 * tan(pi (r - 0.5)), fresh r per gene.
Genome cauchy_search(const GeneLayout& layout, const Genome& agent, double k2, std::span<const double> r);
Genome cauchy_search(const GeneLayout& layout, const Genome& agent, double k2, Rng& rng);
/// Per-gene scaling of the best position by (1 + 0.5 r), fresh r per gene.
Genome neighborhood_search(const GeneLayout& layout, const Genome& best, std::span<const double> r);
Genome neighborhood_search(const GeneLayout& layout, const Genome& best, Rng& rng);

/// Conventional WOA pieces. The control parameter falls linearly from 2 to 0.
double woa_control(int t, int iterations);
/// target - A |C target - x|, toward the best (|A| < 1) or a random whale.
Genome woa_encircle(const GeneLayout& layout, const Genome& agent, const Genome& target, double a, double c);
/// |best - x| e^l cos(2 pi l) + best (spiral constant 1).
Genome woa_spiral(const GeneLayout& layout, const Genome& agent, const Genome& best, double l);

/// Replaces `agent` with `candidate` iff the candidate is strictly fitter.
bool greedy_accept(Agent& agent, Agent candidate);

struct TracePoint {
  int iteration = 0;
  double best_fitness = 0.0;
  double best_energy = 0.0;
  bool feasible = false;
};

struct MoveCounts {
  long exploration = 0;   // Cauchy search (IWOA) or move toward a random whale (WOA)
  long encircle = 0;
  long spiral = 0;
  long neighborhood = 0;
  long evaluations = 0;
};

struct OptimizerState {
  std::vector<Agent> population;
  Agent best;  // historically best agent
  int t = 0;
  std::vector<TracePoint> trace;
  Rng rng;
  MoveCounts counts;
  double max_share_error = 0.0;  // over every evaluation so far
};

/// Random population per the encoding's sampling rules, repaired and evaluated.
OptimizerState initialize(const Scenario& scenario, const OptimizerParams& params);

/// One IWOA iteration: main move per agent, re-evaluation, best update, then a
/// greedy neighbourhood move around the historically best agent.
void step(OptimizerState& state, const Scenario& scenario, const OptimizerParams& params);

/// One conventional WOA iteration, steered by the current population's best.
void woa_step(OptimizerState& state, const Scenario& scenario, const OptimizerParams& params);

struct RunResult {
  Agent best;
  std::vector<TracePoint> trace;
  MoveCounts counts;
  double max_share_error = 0.0;
};

RunResult run(const Scenario& scenario, const OptimizerParams& params);

/// Columns: iteration,best_fitness,best_energy,feasible.
void write_trace_csv(const std::filesystem::path& path, const std::vector<TracePoint>& trace);

}  // namespace offload
