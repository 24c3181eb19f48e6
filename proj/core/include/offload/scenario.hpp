#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "offload/config_file.hpp"

namespace offload {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

double distance(const Point& a, const Point& b);

struct Range {
  double min = 0.0;
  double max = 0.0;
};

/// One cryptographic algorithm: protection level, per-bit encrypt/decrypt
/// cycles and per-bit energy (shared by encryption and decryption).
struct CryptoProfile {
  int level = 0;
  double encrypt_cost = 0.0;  // cycles/bit
  double decrypt_cost = 0.0;  // cycles/bit
  double energy_cost = 0.0;   // J/bit
};

/// Six-algorithm catalog, levels 1..6.
std::vector<CryptoProfile> default_crypto_catalog();

/// Everything needed to generate a Scenario. Units: Hz, mW, bits, cycles,
/// seconds, metres, k$. Field names double as configuration-file keys.
struct ScenarioConfig {
  std::uint64_t seed = 1;
  int num_imds = 10;
  int num_sbs = 30;
  int num_clusters = 5;
  int num_tasks_per_imd = 3;
  double system_bandwidth = 2.0e7;
  double subchannel_bandwidth = 1.0e6;
  double partition_factor = 0.5;
  double noise_power = 1e-11;
  double max_power = 199.526;  // 23 dBm
  double power_floor = 1e-20;
  double data_floor = 1e-20;
  double backhaul_rate = 1e9;
  double f_bs = 2.0e10;
  double f_ue = 1.0e9;
  double energy_coeff = 1e-25;  // J s^2 / cycle^3
  double macrocell_radius = 500.0;
  double shadowing_std_db = 8.0;
  Range deadline_range{5.0, 10.0};
  Range data_size_range{1.6e6, 4.0e6};
  Range cycles_per_bit_range{50.0, 100.0};
  Range finance_loss_range{1.0, 5.0};
  Range max_breach_cost_range{5.0, 10.0};
  Range risk_coeff_range{1.0, 3.0};
  std::vector<int> expected_level_set{5, 6};
  double penalty_alpha = 1e4;
  double penalty_beta = 1e4;
  std::vector<CryptoProfile> crypto_catalog = default_crypto_catalog();
};

/// Throws std::invalid_argument naming the first violated invariant.
void validate(const ScenarioConfig& config);

/// Applies `key=value` overrides onto `base`. Unknown keys are an error.
ScenarioConfig scenario_config_from(const KeyValues& values, ScenarioConfig base = {});
ScenarioConfig read_scenario_config(const std::filesystem::path& path);
/// scenario_config_from without the final validate(), for partial configs
/// that are completed later (e.g. by an experiment sweep).
ScenarioConfig apply_scenario_keys(const KeyValues& values, ScenarioConfig base = {});

struct TaskSpec {
  double data_size = 0.0;       // bits
  double cycles_per_bit = 0.0;  // cycles/bit
  double finance_loss = 0.0;    // k$, shared by task index k across IMDs
  double risk_coeff = 0.0;
  int expected_level = 0;
};

struct SpectrumPlan {
  double mbs_bandwidth = 0.0;  // Hz
  int num_subchannels = 1;     // per cluster; also the MBS's virtual subchannels
};

/// MBS gets eta * bandwidth; each SBS cluster gets
/// N = round((1 - eta) * bandwidth / (subchannel_bandwidth * clusters)),
/// floored at 1 (with a warning when the SBS tier is left without spectrum).
SpectrumPlan spectrum_plan(const ScenarioConfig& config);

/// Immutable simulation world. BS index 0 is the MBS, 1..S are SBSs.
struct Scenario {
  ScenarioConfig config;
  std::vector<Point> bs_positions;
  std::vector<Point> imd_positions;
  std::vector<double> gains;        // row-major [imd][bs], linear power gain
  std::vector<int> cluster_of_bs;   // [bs]; 0 for the MBS, 1..W for SBSs
  SpectrumPlan spectrum;
  std::vector<TaskSpec> tasks;      // row-major [imd][task]
  std::vector<double> deadlines;    // s, per IMD
  std::vector<double> max_costs;    // k$, per IMD

  int num_imds() const { return static_cast<int>(imd_positions.size()); }
  int num_sbs() const { return static_cast<int>(bs_positions.size()) - 1; }
  int num_bs() const { return static_cast<int>(bs_positions.size()); }
  int num_tasks() const { return config.num_tasks_per_imd; }
  int num_subchannels() const { return spectrum.num_subchannels; }
  int num_crypto() const { return static_cast<int>(config.crypto_catalog.size()); }

  double gain(int imd, int bs) const {
    return gains[static_cast<std::size_t>(imd) * static_cast<std::size_t>(num_bs()) + static_cast<std::size_t>(bs)];
  }
  const TaskSpec& task(int imd, int k) const {
    return tasks[static_cast<std::size_t>(imd) * static_cast<std::size_t>(num_tasks()) + static_cast<std::size_t>(k)];
  }
  /// 1-based algorithm index.
  const CryptoProfile& crypto(int algorithm) const {
    return config.crypto_catalog[static_cast<std::size_t>(algorithm - 1)];
  }
};

/// Throws std::logic_error if sizes or positivity invariants are broken.
void check_invariants(const Scenario& scenario);

/// Path loss in dB for a distance in metres (converted to km internally).
double mbs_path_loss_db(double metres);
double sbs_path_loss_db(double metres);

/// Deterministic world generation: identical configs give identical scenarios.
Scenario generate_scenario(const ScenarioConfig& config);

/// Writes bs.csv, imds.csv, gains.csv, tasks.csv and crypto.csv into `dir`.
void write_scenario_csv(const Scenario& scenario, const std::filesystem::path& dir);

}  // namespace offload
