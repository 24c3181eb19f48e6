#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "offload/evaluator.hpp"
#include "offload/oracle.hpp"
#include "offload/rng.hpp"

namespace offload::oracle {
namespace {

constexpr double kFractions[] = {0.0, 0.5, 1.0};

// Odometer over a vector of digits with per-digit radix; false once it wraps.
bool advance(std::vector<int>& digits, const std::vector<int>& radix) {
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (++digits[i] < radix[i]) return true;
    digits[i] = 0;
  }
  return false;
}

}  // namespace

ScenarioConfig tiny_config(std::uint64_t seed) {
  Rng rng(derive_seed(seed, 0x7469));
  ScenarioConfig c;
  c.seed = seed;
  c.num_imds = static_cast<int>(rng.uniform_int(1, 2));
  c.num_sbs = static_cast<int>(rng.uniform_int(c.num_imds, 2));
  c.num_clusters = static_cast<int>(rng.uniform_int(1, c.num_sbs));
  c.num_tasks_per_imd = static_cast<int>(rng.uniform_int(1, 2));
  c.partition_factor = rng.uniform(0.1, 0.9);
  const int n = static_cast<int>(rng.uniform_int(1, 2));
  c.subchannel_bandwidth = (1.0 - c.partition_factor) * c.system_bandwidth / (n * c.num_clusters);
  c.macrocell_radius = 200.0;
  // Tight limits so both penalty terms show up on part of the grid.
  c.deadline_range = {0.05, 1.0};
  c.max_breach_cost_range = {0.5, 3.0};
  c.data_size_range = {2e5, 1e6};
  c.energy_coeff = rng.uniform(1e-28, 1e-26);
  auto catalog = default_crypto_catalog();
  c.crypto_catalog = {catalog[0], catalog[5]};
  c.crypto_catalog[0].level = static_cast<int>(rng.uniform_int(3, 5));
  c.crypto_catalog[1].level = 6;
  c.penalty_alpha = 1e4;
  c.penalty_beta = 1e4;
  return c;
}

void enumerate_decisions(const Scenario& s, const std::function<void(const DecisionVector&)>& visit) {
  const int U = s.num_imds();
  const int K = s.num_tasks();
  const double powers[] = {s.config.power_floor, s.config.max_power / 2.0, s.config.max_power};

  // Digits: per IMD bs, channel, power, first fraction, second fraction; per task crypto.
  std::vector<int> radix;
  for (int i = 0; i < U; ++i) {
    radix.insert(radix.end(), {s.num_bs(), s.num_subchannels(), 3, 3, 3});
  }
  for (int j = 0; j < U * K; ++j) radix.push_back(s.num_crypto());
  std::vector<int> digits(radix.size(), 0);

  DecisionVector d;
  d.bs.resize(static_cast<std::size_t>(U));
  d.channel.resize(static_cast<std::size_t>(U));
  d.power.resize(static_cast<std::size_t>(U));
  d.crypto.resize(static_cast<std::size_t>(U * K));
  d.offload.resize(static_cast<std::size_t>(U * K));
  d.relay.resize(static_cast<std::size_t>(U * K));
  const double floor = s.config.data_floor;

  do {
    for (int i = 0; i < U; ++i) {
      const auto* g = &digits[static_cast<std::size_t>(5 * i)];
      d.bs[static_cast<std::size_t>(i)] = g[0];
      d.channel[static_cast<std::size_t>(i)] = g[1] + 1;
      d.power[static_cast<std::size_t>(i)] = powers[g[2]];
      for (int k = 0; k < K; ++k) {
        const auto j = static_cast<std::size_t>(i * K + k);
        const double first = std::max(floor, kFractions[g[3]] * s.tasks[j].data_size);
        d.offload[j] = first;
        d.relay[j] = std::max(floor, kFractions[g[4]] * first);
      }
    }
    for (int j = 0; j < U * K; ++j) {
      d.crypto[static_cast<std::size_t>(j)] = digits[static_cast<std::size_t>(5 * U + j)] + 1;
    }
    visit(d);
  } while (advance(digits, radix));
}

double relative_error(double a, double b) {
  if (a == b) return 0.0;
  if (std::isnan(a) || std::isnan(b) || std::isinf(a) || std::isinf(b)) return std::numeric_limits<double>::infinity();
  return std::abs(a - b) / std::max(std::abs(a), std::abs(b));
}

CheckSummary run_check(int instances, std::uint64_t seed, double tolerance) {
  CheckSummary out;
  for (int n = 0; n < instances; ++n) {
    const auto config = tiny_config(derive_seed(seed, static_cast<std::uint64_t>(n)));
    const auto scenario = generate_scenario(config);
    const Penalties penalties{config.penalty_alpha, config.penalty_beta};
    ++out.instances;
    enumerate_decisions(scenario, [&](const DecisionVector& d) {
      ++out.points;
      const double got = fitness(scenario, d, penalties).fitness;
      const double want = evaluate(scenario, d, penalties.alpha, penalties.beta).fitness;
      const double err = relative_error(got, want);
      out.max_relative_error = std::max(out.max_relative_error, err);
      if (err > tolerance) {
        if (out.mismatches == 0) {
          out.first_mismatch = fmt::format("instance {} point {}: evaluator {} vs reference {}", n, out.points, got, want);
        }
        ++out.mismatches;
      }
    });
  }
  return out;
}

}  // namespace offload::oracle
