#include "offload/baselines.hpp"

#include "offload/evaluator.hpp"

namespace offload {
namespace {

DecisionVector sized_for(const Scenario& s) {
  const auto u = static_cast<std::size_t>(s.num_imds());
  const auto uk = u * static_cast<std::size_t>(s.num_tasks());
  DecisionVector d;
  d.bs.resize(u);
  d.channel.resize(u);
  d.power.resize(u);
  d.crypto.resize(uk);
  d.offload.resize(uk);
  d.relay.resize(uk);
  return d;
}

}  // namespace

int min_breach_algorithm(const Scenario& scenario, const TaskSpec& task) {
  int best = 1;
  double best_p = failure_probability(task, scenario.crypto(1).level);
  for (int l = 2; l <= scenario.num_crypto(); ++l) {
    const double p = failure_probability(task, scenario.crypto(l).level);
    if (p < best_p) {
      best_p = p;
      best = l;
    }
  }
  return best;
}

DecisionVector cmt(const Scenario& s) {
  auto d = sized_for(s);
  const auto& c = s.config;
  for (int i = 0; i < s.num_imds(); ++i) {
    const auto ii = static_cast<std::size_t>(i);
    int nearest = 0;
    double nearest_d = distance(s.imd_positions[ii], s.bs_positions[0]);
    for (int b = 1; b < s.num_bs(); ++b) {
      const double dist = distance(s.imd_positions[ii], s.bs_positions[static_cast<std::size_t>(b)]);
      if (dist < nearest_d) {
        nearest_d = dist;
        nearest = b;
      }
    }
    d.bs[ii] = nearest;
    d.channel[ii] = 1;
    d.power[ii] = c.power_floor;
  }
  for (std::size_t j = 0; j < s.tasks.size(); ++j) {
    d.crypto[j] = min_breach_algorithm(s, s.tasks[j]);
    d.offload[j] = c.data_floor;
    d.relay[j] = c.data_floor;
  }
  return d;
}

DecisionVector cms(const Scenario& s) {
  auto d = sized_for(s);
  const auto& c = s.config;
  for (int i = 0; i < s.num_imds(); ++i) {
    const auto ii = static_cast<std::size_t>(i);
    int best = 0;
    for (int b = 1; b < s.num_bs(); ++b) {
      if (s.gain(i, b) > s.gain(i, best)) best = b;
    }
    d.bs[ii] = best;
    d.channel[ii] = i % s.num_subchannels() + 1;
    d.power[ii] = c.max_power;
  }
  for (std::size_t j = 0; j < s.tasks.size(); ++j) {
    d.crypto[j] = min_breach_algorithm(s, s.tasks[j]);
    d.offload[j] = s.tasks[j].data_size;
    d.relay[j] = c.data_floor;
  }
  return d;
}

}  // namespace offload
