#pragma once

#include <cstddef>

#include "offload/decision.hpp"
#include "offload/scenario.hpp"

namespace offload::testing {

// Hand-built worlds for pinning single formulas. Every SBS starts in cluster 1,
// every gain is 1e-10 and every task is 1e6 bits at 50 cycles/bit.
inline Scenario make_world(int imds, int sbs, int tasks) {
  Scenario s;
  auto& c = s.config;
  c.num_imds = imds;
  c.num_sbs = sbs;
  c.num_clusters = 1;
  c.num_tasks_per_imd = tasks;
  s.bs_positions.assign(static_cast<std::size_t>(sbs + 1), Point{});
  s.imd_positions.assign(static_cast<std::size_t>(imds), Point{1.0, 1.0});
  s.gains.assign(static_cast<std::size_t>(imds * (sbs + 1)), 1e-10);
  s.cluster_of_bs.assign(static_cast<std::size_t>(sbs + 1), 1);
  s.cluster_of_bs[0] = 0;
  s.spectrum = spectrum_plan(c);
  s.tasks.assign(static_cast<std::size_t>(imds * tasks), TaskSpec{1e6, 50.0, 1.0, 1.0, 5});
  s.deadlines.assign(static_cast<std::size_t>(imds), 10.0);
  s.max_costs.assign(static_cast<std::size_t>(imds), 10.0);
  return s;
}

inline double& gain_at(Scenario& s, int imd, int bs) {
  return s.gains[static_cast<std::size_t>(imd * s.num_bs() + bs)];
}

inline TaskSpec& task_at(Scenario& s, int imd, int k) {
  return s.tasks[static_cast<std::size_t>(imd * s.num_tasks() + k)];
}

// Nothing offloaded: every device on the MBS, channel 1, algorithm 1.
inline DecisionVector idle_decision(const Scenario& s) {
  const auto u = static_cast<std::size_t>(s.num_imds());
  const auto uk = u * static_cast<std::size_t>(s.num_tasks());
  DecisionVector d;
  d.bs.assign(u, 0);
  d.channel.assign(u, 1);
  d.power.assign(u, s.config.power_floor);
  d.crypto.assign(uk, 1);
  d.offload.assign(uk, s.config.data_floor);
  d.relay.assign(uk, s.config.data_floor);
  return d;
}

inline std::size_t at(const Scenario& s, int imd, int k) {
  return static_cast<std::size_t>(imd * s.num_tasks() + k);
}

}  // namespace offload::testing
