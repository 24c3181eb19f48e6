#include "offload/evaluator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include <fmt/format.h>

namespace offload {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double log2_1p(double x) { return std::log1p(x) / std::numbers::ln2; }

double proportional_share(double capacity, double workload, double total) {
  // With no workload at all the share is never exercised; full capacity avoids 0/0.
  if (!(total > 0.0)) return capacity;
  return capacity * workload / total;
}

double ratio_at_or_below(std::span<const double> values, std::span<const double> limits) {
  if (values.empty()) return 1.0;
  std::size_t ok = 0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] <= limits[i]) ++ok;
  }
  return static_cast<double>(ok) / static_cast<double>(values.size());
}

}  // namespace

double EvaluationReport::total_delay() const {
  double sum = 0.0;
  for (double t : delay) sum += t;
  return sum;
}

double EvaluationReport::time_support_ratio() const {
  std::vector<double> zero(delay_violation.size(), 0.0);
  return ratio_at_or_below(delay_violation, zero);
}

double EvaluationReport::cost_support_ratio() const {
  std::vector<double> zero(cost_violation.size(), 0.0);
  return ratio_at_or_below(cost_violation, zero);
}

double failure_probability(const TaskSpec& task, int level) {
  if (level >= task.expected_level) return 0.0;
  return 1.0 - std::exp(-task.risk_coeff * static_cast<double>(task.expected_level - level));
}

DecisionContext::DecisionContext(const Scenario& scenario, const DecisionVector& decision)
    : scenario_(scenario), decision_(decision) {
  const int u = scenario.num_imds();
  const int k = scenario.num_tasks();
  const auto uk = static_cast<std::size_t>(u) * static_cast<std::size_t>(k);
  if (decision.bs.size() != static_cast<std::size_t>(u) || decision.channel.size() != static_cast<std::size_t>(u) ||
      decision.power.size() != static_cast<std::size_t>(u) || decision.crypto.size() != uk ||
      decision.offload.size() != uk || decision.relay.size() != uk) {
    throw std::logic_error("decision vector does not match the scenario's dimensions");
  }
  for (int i = 0; i < u; ++i) {
    const auto idx = static_cast<std::size_t>(i);
    if (decision.bs[idx] < 0 || decision.bs[idx] > scenario.num_sbs()) {
      throw std::logic_error(fmt::format("IMD {} has undefined BS gene {}", i, decision.bs[idx]));
    }
    if (decision.channel[idx] < 1 || decision.channel[idx] > scenario.num_subchannels()) {
      throw std::logic_error(fmt::format("IMD {} has undefined channel gene {}", i, decision.channel[idx]));
    }
  }
  for (std::size_t j = 0; j < uk; ++j) {
    if (decision.crypto[j] < 1 || decision.crypto[j] > scenario.num_crypto()) {
      throw std::logic_error(fmt::format("task {} has undefined crypto gene {}", j, decision.crypto[j]));
    }
  }

  sbs_load_.assign(static_cast<std::size_t>(scenario.num_bs()), 0.0);
  for (int i = 0; i < u; ++i) {
    const int b = decision.bs[static_cast<std::size_t>(i)];
    if (b == 0) ++mbs_users_;
    for (int t = 0; t < k; ++t) {
      if (b != 0) sbs_load_[static_cast<std::size_t>(b)] += sbs_workload(i, t);
      mbs_load_ += mbs_workload(i, t);
    }
  }

  rates_.resize(static_cast<std::size_t>(u));
  for (int i = 0; i < u; ++i) {
    rates_[static_cast<std::size_t>(i)] =
        decision.bs[static_cast<std::size_t>(i)] == 0 ? compute_mbs_rate(i) : compute_sbs_rate(i);
  }
}

std::size_t DecisionContext::task_index(int imd, int task) const {
  return static_cast<std::size_t>(imd) * static_cast<std::size_t>(scenario_.num_tasks()) +
         static_cast<std::size_t>(task);
}

// SBS cycles: compute (offload - relay), decrypt the offload, re-encrypt the relay.
double DecisionContext::sbs_workload(int imd, int task) const {
  const auto j = task_index(imd, task);
  const auto& spec = scenario_.tasks[j];
  const auto& algo = scenario_.crypto(decision_.crypto[j]);
  const double offload = decision_.offload[j];
  const double relay = decision_.relay[j];
  return (offload - relay) * spec.cycles_per_bit + algo.decrypt_cost * offload + algo.encrypt_cost * relay;
}

// MBS cycles: compute and decrypt the relayed part for SBS users, or the whole
// offloaded part for direct MBS users.
double DecisionContext::mbs_workload(int imd, int task) const {
  const auto j = task_index(imd, task);
  const auto& spec = scenario_.tasks[j];
  const auto& algo = scenario_.crypto(decision_.crypto[j]);
  const double bits = decision_.bs[static_cast<std::size_t>(imd)] == 0 ? decision_.offload[j] : decision_.relay[j];
  return bits * spec.cycles_per_bit + algo.decrypt_cost * bits;
}

double DecisionContext::transfer_time(double bits, double rate) const {
  if (rate > 0.0) return bits / rate;
  return bits > scenario_.config.data_floor ? kInf : 0.0;
}

double DecisionContext::compute_sbs_rate(int imd) const {
  const auto i = static_cast<std::size_t>(imd);
  const int s = decision_.bs[i];
  const int cluster = scenario_.cluster_of_bs[static_cast<std::size_t>(s)];
  const int channel = decision_.channel[i];
  const double own_gain = scenario_.gain(imd, s);

  // Co-channel users of the same cluster whose gain at s does not exceed ours.
  double interference = 0.0;
  for (int u = 0; u < scenario_.num_imds(); ++u) {
    const auto ui = static_cast<std::size_t>(u);
    if (u == imd || decision_.bs[ui] == 0) continue;
    if (decision_.channel[ui] != channel) continue;
    if (scenario_.cluster_of_bs[static_cast<std::size_t>(decision_.bs[ui])] != cluster) continue;
    const double g = scenario_.gain(u, s);
    if (g <= own_gain) interference += decision_.power[ui] * g;
  }
  const double sinr = decision_.power[i] * own_gain / (interference + scenario_.config.noise_power);
  return scenario_.config.subchannel_bandwidth * log2_1p(sinr);
}

double DecisionContext::compute_mbs_rate(int imd) const {
  const auto i = static_cast<std::size_t>(imd);
  const double snr = decision_.power[i] * scenario_.gain(imd, 0) / scenario_.config.noise_power;
  return scenario_.spectrum.mbs_bandwidth / static_cast<double>(mbs_users_) * log2_1p(snr);
}

double DecisionContext::uplink_rate_sbs(int imd) const {
  if (decision_.bs[static_cast<std::size_t>(imd)] == 0) {
    throw std::logic_error(fmt::format("IMD {} is not associated with an SBS", imd));
  }
  return uplink_rate(imd);
}

double DecisionContext::uplink_rate_mbs(int imd) const {
  if (decision_.bs[static_cast<std::size_t>(imd)] != 0) {
    throw std::logic_error(fmt::format("IMD {} is not associated with the MBS", imd));
  }
  return uplink_rate(imd);
}

double DecisionContext::sbs_compute_share(int imd, int task) const {
  const int s = decision_.bs[static_cast<std::size_t>(imd)];
  if (s == 0) throw std::logic_error(fmt::format("IMD {} is not associated with an SBS", imd));
  return proportional_share(scenario_.config.f_bs, sbs_workload(imd, task), sbs_load_[static_cast<std::size_t>(s)]);
}

double DecisionContext::mbs_compute_share(int imd, int task) const {
  return proportional_share(scenario_.config.f_bs, mbs_workload(imd, task), mbs_load_);
}

double DecisionContext::local_time(int imd, int task) const {
  const auto j = task_index(imd, task);
  const auto& spec = scenario_.tasks[j];
  const double offload = decision_.offload[j];
  const double encrypt = scenario_.crypto(decision_.crypto[j]).encrypt_cost;
  return ((spec.data_size - offload) * spec.cycles_per_bit + encrypt * offload) / scenario_.config.f_ue;
}

double DecisionContext::remote_time_sbs(int imd, int task) const {
  const auto j = task_index(imd, task);
  const auto& spec = scenario_.tasks[j];
  const auto& algo = scenario_.crypto(decision_.crypto[j]);
  const double offload = decision_.offload[j];
  const double relay = decision_.relay[j];
  const double f_sbs = sbs_compute_share(imd, task);
  const double f_mbs = mbs_compute_share(imd, task);
  return transfer_time(offload, uplink_rate_sbs(imd))          // device -> SBS
         + (offload - relay) * spec.cycles_per_bit / f_sbs      // SBS compute
         + relay / scenario_.config.backhaul_rate               // SBS -> MBS
         + relay * spec.cycles_per_bit / f_mbs                  // MBS compute
         + algo.decrypt_cost * offload / f_sbs                  // SBS decrypt
         + algo.encrypt_cost * relay / f_sbs                    // SBS re-encrypt
         + algo.decrypt_cost * relay / f_mbs;                   // MBS decrypt
}

double DecisionContext::remote_time_mbs(int imd, int task) const {
  const auto j = task_index(imd, task);
  const auto& spec = scenario_.tasks[j];
  const double offload = decision_.offload[j];
  const double f_mbs = mbs_compute_share(imd, task);
  const double decrypt = scenario_.crypto(decision_.crypto[j]).decrypt_cost;
  return transfer_time(offload, uplink_rate_mbs(imd)) + offload * spec.cycles_per_bit / f_mbs +
         decrypt * offload / f_mbs;
}

double DecisionContext::remote_time(int imd, int task) const {
  return decision_.bs[static_cast<std::size_t>(imd)] == 0 ? remote_time_mbs(imd, task) : remote_time_sbs(imd, task);
}

double DecisionContext::total_delay(int imd) const {
  double sum = 0.0;
  for (int k = 0; k < scenario_.num_tasks(); ++k) sum += std::max(local_time(imd, k), remote_time(imd, k));
  return sum;
}

double DecisionContext::breach_cost(int imd) const {
  double sum = 0.0;
  for (int k = 0; k < scenario_.num_tasks(); ++k) {
    const auto j = task_index(imd, k);
    const auto& spec = scenario_.tasks[j];
    sum += spec.finance_loss * failure_probability(spec, scenario_.crypto(decision_.crypto[j]).level);
  }
  return sum;
}

// Local compute + encryption + upload energy. Power is in mW, hence the 1e-3.
double DecisionContext::task_energy(int imd, int task) const {
  const auto j = task_index(imd, task);
  const auto& spec = scenario_.tasks[j];
  const auto& cfg = scenario_.config;
  const double offload = decision_.offload[j];
  const double compute = cfg.energy_coeff * (spec.data_size - offload) * spec.cycles_per_bit * cfg.f_ue * cfg.f_ue;
  const double encrypt = scenario_.crypto(decision_.crypto[j]).energy_cost * offload;
  const double upload = 1e-3 * decision_.power[static_cast<std::size_t>(imd)] * transfer_time(offload, uplink_rate(imd));
  return compute + encrypt + upload;
}

double DecisionContext::total_energy() const {
  double sum = 0.0;
  for (int i = 0; i < scenario_.num_imds(); ++i) {
    for (int k = 0; k < scenario_.num_tasks(); ++k) sum += task_energy(i, k);
  }
  return sum;
}

EvaluationReport DecisionContext::report(const Penalties& penalties) const {
  const int u = scenario_.num_imds();
  const int k = scenario_.num_tasks();
  const auto uk = static_cast<std::size_t>(u) * static_cast<std::size_t>(k);
  const double f_bs = scenario_.config.f_bs;

  EvaluationReport r;
  r.delay.resize(static_cast<std::size_t>(u));
  r.breach_cost.resize(static_cast<std::size_t>(u));
  r.delay_violation.resize(static_cast<std::size_t>(u));
  r.cost_violation.resize(static_cast<std::size_t>(u));
  r.rate = rates_;
  r.sbs_share.assign(uk, 0.0);
  r.mbs_share.resize(uk);
  r.local_time.resize(uk);
  r.remote_time.resize(uk);

  std::vector<double> sbs_handed_out(static_cast<std::size_t>(scenario_.num_bs()), 0.0);
  double mbs_handed_out = 0.0;
  double delay_penalty = 0.0;
  double cost_penalty = 0.0;
  r.feasible = true;

  for (int i = 0; i < u; ++i) {
    const auto ii = static_cast<std::size_t>(i);
    const int b = decision_.bs[ii];
    double delay = 0.0;
    for (int t = 0; t < k; ++t) {
      const auto j = task_index(i, t);
      if (b != 0) {
        r.sbs_share[j] = sbs_compute_share(i, t);
        sbs_handed_out[static_cast<std::size_t>(b)] += r.sbs_share[j];
      }
      r.mbs_share[j] = mbs_compute_share(i, t);
      mbs_handed_out += r.mbs_share[j];
      r.local_time[j] = local_time(i, t);
      r.remote_time[j] = remote_time(i, t);
      delay += std::max(r.local_time[j], r.remote_time[j]);
    }
    r.delay[ii] = delay;
    r.breach_cost[ii] = breach_cost(i);
    r.delay_violation[ii] = std::max(0.0, delay - scenario_.deadlines[ii]);
    r.cost_violation[ii] = std::max(0.0, r.breach_cost[ii] - scenario_.max_costs[ii]);
    if (r.delay_violation[ii] > 0.0 || r.cost_violation[ii] > 0.0) r.feasible = false;
    delay_penalty += r.delay_violation[ii];
    cost_penalty += r.cost_violation[ii];
  }

  r.total_energy = total_energy();
  r.fitness = -r.total_energy - penalties.alpha * delay_penalty - penalties.beta * cost_penalty;

  double worst = std::abs(mbs_handed_out - f_bs) / f_bs;  // every task claims MBS cycles
  for (int b = 1; b < scenario_.num_bs(); ++b) {
    if (sbs_handed_out[static_cast<std::size_t>(b)] == 0.0) continue;
    worst = std::max(worst, std::abs(sbs_handed_out[static_cast<std::size_t>(b)] - f_bs) / f_bs);
  }
  r.max_share_error = worst;
  return r;
}

double uplink_rate_sbs(const Scenario& s, const DecisionVector& d, int imd) {
  return DecisionContext(s, d).uplink_rate_sbs(imd);
}
double uplink_rate_mbs(const Scenario& s, const DecisionVector& d, int imd) {
  return DecisionContext(s, d).uplink_rate_mbs(imd);
}
double sbs_compute_share(const Scenario& s, const DecisionVector& d, int imd, int task) {
  return DecisionContext(s, d).sbs_compute_share(imd, task);
}
double mbs_compute_share(const Scenario& s, const DecisionVector& d, int imd, int task) {
  return DecisionContext(s, d).mbs_compute_share(imd, task);
}
double local_time(const Scenario& s, const DecisionVector& d, int imd, int task) {
  return DecisionContext(s, d).local_time(imd, task);
}
double remote_time_sbs(const Scenario& s, const DecisionVector& d, int imd, int task) {
  return DecisionContext(s, d).remote_time_sbs(imd, task);
}
double remote_time_mbs(const Scenario& s, const DecisionVector& d, int imd, int task) {
  return DecisionContext(s, d).remote_time_mbs(imd, task);
}
double total_delay(const Scenario& s, const DecisionVector& d, int imd) { return DecisionContext(s, d).total_delay(imd); }
double breach_cost(const Scenario& s, const DecisionVector& d, int imd) { return DecisionContext(s, d).breach_cost(imd); }
double total_energy(const Scenario& s, const DecisionVector& d) { return DecisionContext(s, d).total_energy(); }

EvaluationReport fitness(const Scenario& s, const DecisionVector& d, const Penalties& penalties) {
  return DecisionContext(s, d).report(penalties);
}

EvaluationReport fitness(const Scenario& s, const DecisionVector& d) {
  return fitness(s, d, Penalties::from(s.config));
}

}  // namespace offload
