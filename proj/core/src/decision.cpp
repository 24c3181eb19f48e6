#include "offload/decision.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

namespace offload {
namespace {

double clamp_real(double v, double lo, double hi) {
  if (std::isnan(v)) return lo;
  return std::clamp(v, lo, hi);
}

int clamp_index(double v, int lo, int hi) {
  if (std::isnan(v)) return lo;
  // Clamp before rounding so huge values never overflow the integer cast.
  const double r = std::round(std::clamp(v, static_cast<double>(lo), static_cast<double>(hi)));
  return static_cast<int>(r);
}

}  // namespace

GeneLayout::GeneLayout(int num_imds, int num_tasks)
    : per_imd_(static_cast<std::size_t>(num_imds)),
      per_task_(static_cast<std::size_t>(num_imds) * static_cast<std::size_t>(num_tasks)) {}

std::size_t GeneLayout::offset(Segment seg) const {
  switch (seg) {
    case Segment::Bs: return 0;
    case Segment::Crypto: return per_imd_;
    case Segment::Channel: return per_imd_ + per_task_;
    case Segment::Power: return 2 * per_imd_ + per_task_;
    case Segment::Offload: return 3 * per_imd_ + per_task_;
    case Segment::Relay: return 3 * per_imd_ + 2 * per_task_;
  }
  return 0;
}

std::size_t GeneLayout::length(Segment seg) const {
  switch (seg) {
    case Segment::Bs:
    case Segment::Channel:
    case Segment::Power: return per_imd_;
    default: return per_task_;
  }
}

Genome encode(const DecisionVector& d) {
  Genome g;
  g.reserve(d.bs.size() * 3 + d.crypto.size() * 3);
  for (int v : d.bs) g.push_back(v);
  for (int v : d.crypto) g.push_back(v);
  for (int v : d.channel) g.push_back(v);
  g.insert(g.end(), d.power.begin(), d.power.end());
  g.insert(g.end(), d.offload.begin(), d.offload.end());
  g.insert(g.end(), d.relay.begin(), d.relay.end());
  return g;
}

DecisionVector repair(const Scenario& s, std::span<const double> raw) {
  using Seg = GeneLayout::Segment;
  const GeneLayout layout(s);
  if (raw.size() != layout.size()) {
    throw std::invalid_argument(fmt::format("genome has {} genes, expected {}", raw.size(), layout.size()));
  }
  const auto& c = s.config;
  const auto u = static_cast<std::size_t>(s.num_imds());
  const auto k = static_cast<std::size_t>(s.num_tasks());

  DecisionVector d;
  d.bs.resize(u);
  d.channel.resize(u);
  d.power.resize(u);
  d.crypto.resize(u * k);
  d.offload.resize(u * k);
  d.relay.resize(u * k);

  for (std::size_t i = 0; i < u; ++i) {
    d.bs[i] = clamp_index(raw[layout.offset(Seg::Bs) + i], 0, s.num_sbs());
    d.channel[i] = clamp_index(raw[layout.offset(Seg::Channel) + i], 1, s.num_subchannels());
    d.power[i] = clamp_real(raw[layout.offset(Seg::Power) + i], c.power_floor, c.max_power);
  }
  for (std::size_t j = 0; j < u * k; ++j) {
    d.crypto[j] = clamp_index(raw[layout.offset(Seg::Crypto) + j], 1, s.num_crypto());
    const double size = s.tasks[j].data_size;
    d.offload[j] = clamp_real(raw[layout.offset(Seg::Offload) + j], c.data_floor, size);
    d.relay[j] = clamp_real(raw[layout.offset(Seg::Relay) + j], c.data_floor, d.offload[j]);
  }
  return d;
}

DecisionVector repair(const Scenario& s, const DecisionVector& decision) {
  return repair(s, encode(decision));
}

bool is_valid(const Scenario& s, const DecisionVector& d) {
  const auto u = static_cast<std::size_t>(s.num_imds());
  const auto uk = u * static_cast<std::size_t>(s.num_tasks());
  if (d.bs.size() != u || d.channel.size() != u || d.power.size() != u || d.crypto.size() != uk ||
      d.offload.size() != uk || d.relay.size() != uk) {
    return false;
  }
  const auto& c = s.config;
  for (std::size_t i = 0; i < u; ++i) {
    if (d.bs[i] < 0 || d.bs[i] > s.num_sbs()) return false;
    if (d.channel[i] < 1 || d.channel[i] > s.num_subchannels()) return false;
    if (!(d.power[i] >= c.power_floor && d.power[i] <= c.max_power)) return false;
  }
  for (std::size_t j = 0; j < uk; ++j) {
    if (d.crypto[j] < 1 || d.crypto[j] > s.num_crypto()) return false;
    if (!(d.relay[j] >= c.data_floor && d.relay[j] <= d.offload[j] && d.offload[j] <= s.tasks[j].data_size)) {
      return false;
    }
  }
  return true;
}

}  // namespace offload
