#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "offload/scenario.hpp"

namespace offload {

/// One offloading decision. Per-task vectors are row-major [imd][task].
struct DecisionVector {
  std::vector<int> bs;           // 0 = MBS, 1..S = SBS
  std::vector<int> crypto;       // 1..L per task
  std::vector<int> channel;      // 1..N per IMD
  std::vector<double> power;     // mW per IMD
  std::vector<double> offload;   // bits sent to the associated BS (first stage)
  std::vector<double> relay;     // bits forwarded from the SBS to the MBS (second stage)

  bool operator==(const DecisionVector&) const = default;
};

/// Flat real-valued gene layout shared by the search operators:
/// [bs | crypto | channel | power | offload | relay].
class GeneLayout {
 public:
  enum class Segment { Bs, Crypto, Channel, Power, Offload, Relay };

  GeneLayout(int num_imds, int num_tasks);
  explicit GeneLayout(const Scenario& scenario) : GeneLayout(scenario.num_imds(), scenario.num_tasks()) {}

  std::size_t size() const { return offset(Segment::Relay) + per_task_; }
  std::size_t offset(Segment seg) const;
  std::size_t length(Segment seg) const;
  bool is_integer(std::size_t gene) const { return gene < offset(Segment::Power); }

 private:
  std::size_t per_imd_;
  std::size_t per_task_;
};

using Genome = std::vector<double>;

Genome encode(const DecisionVector& decision);

/// Maps arbitrary real genes onto a valid decision: integer genes rounded and
/// clamped to their index ranges, power into [power_floor, max_power], and
/// data_floor <= relay <= offload <= data size. NaN maps to the lower bound.
DecisionVector repair(const Scenario& scenario, std::span<const double> raw);
DecisionVector repair(const Scenario& scenario, const DecisionVector& decision);

/// True when every gene already lies in its repaired range.
bool is_valid(const Scenario& scenario, const DecisionVector& decision);

}  // namespace offload
