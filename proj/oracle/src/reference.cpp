#include <algorithm>
#include <cmath>
#include <limits>

#include "offload/oracle.hpp"

namespace offload::oracle {
namespace {

// log2(1 + x) that stays positive for the ~1e-22 SNRs produced by the power floor.
double bits_per_hz(double x) { return std::log1p(x) / std::log(2.0); }

}  // namespace

Reference evaluate(const Scenario& s, const DecisionVector& d, double alpha, double beta) {
  const auto& cfg = s.config;
  const int U = s.num_imds();
  const int K = s.num_tasks();
  const int B = s.num_bs();
  const double inf = std::numeric_limits<double>::infinity();

  auto at = [K](int i, int k) { return static_cast<std::size_t>(i * K + k); };
  auto dbar = [&](int i, int k) { return d.offload[at(i, k)]; };
  auto dhat = [&](int i, int k) { return d.relay[at(i, k)]; };
  auto algo = [&](int i, int k) { return cfg.crypto_catalog[static_cast<std::size_t>(d.crypto[at(i, k)] - 1)]; };
  auto task = [&](int i, int k) { return s.tasks[at(i, k)]; };
  auto gain = [&](int i, int b) { return s.gains[static_cast<std::size_t>(i * B + b)]; };
  auto bs_of = [&](int i) { return d.bs[static_cast<std::size_t>(i)]; };

  std::vector<double> R(static_cast<std::size_t>(U));
  int mbs_count = 0;
  for (int i = 0; i < U; ++i) mbs_count += bs_of(i) == 0 ? 1 : 0;
  for (int i = 0; i < U; ++i) {
    const double p = d.power[static_cast<std::size_t>(i)];
    const int b = bs_of(i);
    if (b == 0) {
      R[static_cast<std::size_t>(i)] =
          cfg.partition_factor * cfg.system_bandwidth / mbs_count * bits_per_hz(p * gain(i, 0) / cfg.noise_power);
      continue;
    }
    double I = 0.0;
    for (int u = 0; u < U; ++u) {
      if (u == i) continue;
      const int bu = bs_of(u);
      const bool same_cluster = bu != 0 && s.cluster_of_bs[static_cast<std::size_t>(bu)] ==
                                               s.cluster_of_bs[static_cast<std::size_t>(b)];
      const bool same_channel = d.channel[static_cast<std::size_t>(u)] == d.channel[static_cast<std::size_t>(i)];
      if (same_cluster && same_channel && gain(u, b) <= gain(i, b)) I += d.power[static_cast<std::size_t>(u)] * gain(u, b);
    }
    R[static_cast<std::size_t>(i)] = cfg.subchannel_bandwidth * bits_per_hz(p * gain(i, b) / (I + cfg.noise_power));
  }

  // Demanded cycles at the SBS and at the MBS for every task.
  auto gamma_sbs = [&](int i, int k) {
    const auto c = algo(i, k);
    return (dbar(i, k) - dhat(i, k)) * task(i, k).cycles_per_bit + c.decrypt_cost * dbar(i, k) +
           c.encrypt_cost * dhat(i, k);
  };
  auto gamma_mbs = [&](int i, int k) {
    const double bits = bs_of(i) == 0 ? dbar(i, k) : dhat(i, k);
    return bits * (task(i, k).cycles_per_bit + algo(i, k).decrypt_cost);
  };
  auto share = [&](double mine, double all) { return all > 0.0 ? cfg.f_bs * mine / all : cfg.f_bs; };
  auto f_sbs = [&](int i, int k) {
    double all = 0.0;
    for (int u = 0; u < U; ++u) {
      if (bs_of(u) != bs_of(i)) continue;
      for (int j = 0; j < K; ++j) all += gamma_sbs(u, j);
    }
    return share(gamma_sbs(i, k), all);
  };
  auto f_mbs = [&](int i, int k) {
    double all = 0.0;
    for (int u = 0; u < U; ++u) {
      for (int j = 0; j < K; ++j) all += gamma_mbs(u, j);
    }
    return share(gamma_mbs(i, k), all);
  };
  auto upload = [&](int i, int k) {
    const double r = R[static_cast<std::size_t>(i)];
    if (r == 0.0) return dbar(i, k) > cfg.data_floor ? inf : 0.0;
    return dbar(i, k) / r;
  };

  Reference out;
  out.delay.assign(static_cast<std::size_t>(U), 0.0);
  out.cost.assign(static_cast<std::size_t>(U), 0.0);
  double over_time = 0.0;
  double over_cost = 0.0;
  for (int i = 0; i < U; ++i) {
    for (int k = 0; k < K; ++k) {
      const auto t = task(i, k);
      const auto c = algo(i, k);
      const double local = ((t.data_size - dbar(i, k)) * t.cycles_per_bit + c.encrypt_cost * dbar(i, k)) / cfg.f_ue;
      double remote = 0.0;
      if (bs_of(i) == 0) {
        const double f0 = f_mbs(i, k);
        remote = upload(i, k) + dbar(i, k) * t.cycles_per_bit / f0 + c.decrypt_cost * dbar(i, k) / f0;
      } else {
        const double fs = f_sbs(i, k);
        const double f0 = f_mbs(i, k);
        remote = upload(i, k);
        remote += (dbar(i, k) - dhat(i, k)) * t.cycles_per_bit / fs;
        remote += dhat(i, k) / cfg.backhaul_rate;
        remote += dhat(i, k) * t.cycles_per_bit / f0;
        remote += c.decrypt_cost * dbar(i, k) / fs;
        remote += c.encrypt_cost * dhat(i, k) / fs;
        remote += c.decrypt_cost * dhat(i, k) / f0;
      }
      out.delay[static_cast<std::size_t>(i)] += std::max(local, remote);

      const double pfail = c.level < t.expected_level ? 1.0 - std::exp(-t.risk_coeff * (t.expected_level - c.level)) : 0.0;
      out.cost[static_cast<std::size_t>(i)] += t.finance_loss * pfail;

      const double watts = d.power[static_cast<std::size_t>(i)] / 1000.0;
      out.energy += cfg.energy_coeff * (t.data_size - dbar(i, k)) * t.cycles_per_bit * std::pow(cfg.f_ue, 2) +
                    c.energy_cost * dbar(i, k) + watts * upload(i, k);
    }
    over_time += std::max(0.0, out.delay[static_cast<std::size_t>(i)] - s.deadlines[static_cast<std::size_t>(i)]);
    over_cost += std::max(0.0, out.cost[static_cast<std::size_t>(i)] - s.max_costs[static_cast<std::size_t>(i)]);
  }
  out.fitness = -out.energy - alpha * over_time - beta * over_cost;
  return out;
}

}  // namespace offload::oracle
