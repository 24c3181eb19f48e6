#include "offload/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include "offload/csv.hpp"
#include "offload/kmeans.hpp"
#include "offload/rng.hpp"

namespace offload {
namespace {

// Independent random streams per generation stage.
constexpr std::uint64_t kGeometryStream = 1;
constexpr std::uint64_t kClusterStream = 2;
constexpr std::uint64_t kTaskStream = 3;

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(fmt::format("invalid scenario config: {}", what));
}

void require_range(const Range& r, bool positive, const char* name) {
  if (!(r.min <= r.max)) throw std::invalid_argument(fmt::format("invalid scenario config: {} min > max", name));
  if (positive && !(r.min > 0.0)) {
    throw std::invalid_argument(fmt::format("invalid scenario config: {} must be positive", name));
  }
}

Point uniform_in_disc(Rng& rng, double radius) {
  const double r = radius * std::sqrt(rng.uniform());
  const double phi = 2.0 * std::numbers::pi * rng.uniform();
  return {r * std::cos(phi), r * std::sin(phi)};
}

Range parse_range(const std::string& key, const std::string& value) {
  const auto v = parse_double_list(key, value);
  if (v.size() != 2) throw std::invalid_argument(fmt::format("{}: expected 'min,max'", key));
  return {v[0], v[1]};
}

template <typename T>
T parse_count(const std::string& key, const std::string& value) {
  const auto v = parse_integer(key, value);
  return static_cast<T>(v);
}

}  // namespace

double distance(const Point& a, const Point& b) { return std::hypot(a.x - b.x, a.y - b.y); }

std::vector<CryptoProfile> default_crypto_catalog() {
  return {
      {1, 100.0, 90.0, 2.5296e-7},   {2, 200.0, 280.0, 5.0425e-7},  {3, 250.0, 350.0, 6.837e-7},
      {4, 300.0, 300.0, 7.8528e-7},  {5, 350.0, 400.0, 8.7073e-7},  {6, 1050.0, 1700.0, 26.3643e-7},
  };
}

void validate(const ScenarioConfig& c) {
  require(c.num_imds >= 1, "num_imds must be >= 1");
  require(c.num_sbs >= 1, "num_sbs must be >= 1");
  require(c.num_clusters >= 1, "num_clusters must be >= 1");
  require(c.num_tasks_per_imd >= 1, "num_tasks_per_imd must be >= 1");
  require(c.num_sbs >= c.num_imds, "num_sbs must be >= num_imds");
  require(c.num_clusters <= c.num_sbs, "num_clusters must be <= num_sbs");
  require(c.partition_factor >= 0.0 && c.partition_factor <= 1.0, "partition_factor must lie in [0,1]");
  require(c.system_bandwidth > 0.0, "system_bandwidth must be positive");
  require(c.subchannel_bandwidth > 0.0, "subchannel_bandwidth must be positive");
  require(c.noise_power > 0.0, "noise_power must be positive");
  require(c.power_floor > 0.0, "power_floor must be positive");
  require(c.max_power >= c.power_floor, "max_power must be >= power_floor");
  require(c.data_floor > 0.0, "data_floor must be positive");
  require(c.backhaul_rate > 0.0, "backhaul_rate must be positive");
  require(c.f_bs > 0.0, "f_bs must be positive");
  require(c.f_ue > 0.0, "f_ue must be positive");
  require(c.energy_coeff >= 0.0, "energy_coeff must be non-negative");
  require(c.macrocell_radius > 0.0, "macrocell_radius must be positive");
  require(c.shadowing_std_db >= 0.0, "shadowing_std_db must be non-negative");
  require_range(c.deadline_range, true, "deadline_range");
  require_range(c.data_size_range, true, "data_size_range");
  require_range(c.cycles_per_bit_range, true, "cycles_per_bit_range");
  require_range(c.finance_loss_range, true, "finance_loss_range");
  require_range(c.max_breach_cost_range, false, "max_breach_cost_range");
  require_range(c.risk_coeff_range, true, "risk_coeff_range");
  require(c.max_breach_cost_range.min >= 0.0, "max_breach_cost_range must be non-negative");
  require(c.data_floor <= c.data_size_range.min, "data_floor must not exceed the smallest data size");
  require(!c.expected_level_set.empty(), "expected_level_set must not be empty");
  require(c.penalty_alpha > 0.0 && c.penalty_beta > 0.0, "penalty factors must be positive");
  require(!c.crypto_catalog.empty(), "crypto_catalog must not be empty");
  for (std::size_t l = 0; l < c.crypto_catalog.size(); ++l) {
    const auto& p = c.crypto_catalog[l];
    require(p.encrypt_cost > 0.0 && p.decrypt_cost > 0.0 && p.energy_cost > 0.0, "crypto costs must be positive");
    if (l > 0) require(p.level > c.crypto_catalog[l - 1].level, "crypto levels must be strictly increasing");
  }
}

ScenarioConfig apply_scenario_keys(const KeyValues& values, ScenarioConfig c) {
  using Setter = std::function<void(const std::string&, const std::string&)>;
  const std::map<std::string, Setter, std::less<>> setters{
      {"seed", [&](auto& k, auto& v) { c.seed = parse_unsigned(k, v); }},
      {"num_imds", [&](auto& k, auto& v) { c.num_imds = parse_count<int>(k, v); }},
      {"num_sbs", [&](auto& k, auto& v) { c.num_sbs = parse_count<int>(k, v); }},
      {"num_clusters", [&](auto& k, auto& v) { c.num_clusters = parse_count<int>(k, v); }},
      {"num_tasks_per_imd", [&](auto& k, auto& v) { c.num_tasks_per_imd = parse_count<int>(k, v); }},
      {"system_bandwidth", [&](auto& k, auto& v) { c.system_bandwidth = parse_double(k, v); }},
      {"subchannel_bandwidth", [&](auto& k, auto& v) { c.subchannel_bandwidth = parse_double(k, v); }},
      {"partition_factor", [&](auto& k, auto& v) { c.partition_factor = parse_double(k, v); }},
      {"noise_power", [&](auto& k, auto& v) { c.noise_power = parse_double(k, v); }},
      {"max_power", [&](auto& k, auto& v) { c.max_power = parse_double(k, v); }},
      {"power_floor", [&](auto& k, auto& v) { c.power_floor = parse_double(k, v); }},
      {"data_floor", [&](auto& k, auto& v) { c.data_floor = parse_double(k, v); }},
      {"backhaul_rate", [&](auto& k, auto& v) { c.backhaul_rate = parse_double(k, v); }},
      {"f_bs", [&](auto& k, auto& v) { c.f_bs = parse_double(k, v); }},
      {"f_ue", [&](auto& k, auto& v) { c.f_ue = parse_double(k, v); }},
      {"energy_coeff", [&](auto& k, auto& v) { c.energy_coeff = parse_double(k, v); }},
      {"macrocell_radius", [&](auto& k, auto& v) { c.macrocell_radius = parse_double(k, v); }},
      {"shadowing_std_db", [&](auto& k, auto& v) { c.shadowing_std_db = parse_double(k, v); }},
      {"deadline_range", [&](auto& k, auto& v) { c.deadline_range = parse_range(k, v); }},
      {"data_size_range", [&](auto& k, auto& v) { c.data_size_range = parse_range(k, v); }},
      {"cycles_per_bit_range", [&](auto& k, auto& v) { c.cycles_per_bit_range = parse_range(k, v); }},
      {"finance_loss_range", [&](auto& k, auto& v) { c.finance_loss_range = parse_range(k, v); }},
      {"max_breach_cost_range", [&](auto& k, auto& v) { c.max_breach_cost_range = parse_range(k, v); }},
      {"risk_coeff_range", [&](auto& k, auto& v) { c.risk_coeff_range = parse_range(k, v); }},
      {"expected_level_set",
       [&](auto& k, auto& v) {
         c.expected_level_set.clear();
         for (const auto& t : split_list(v)) c.expected_level_set.push_back(static_cast<int>(parse_integer(k, t)));
       }},
      {"penalty_alpha", [&](auto& k, auto& v) { c.penalty_alpha = parse_double(k, v); }},
      {"penalty_beta", [&](auto& k, auto& v) { c.penalty_beta = parse_double(k, v); }},
  };

  // Catalog columns are applied together so their lengths can be checked.
  const char* crypto_keys[] = {"crypto_levels", "crypto_encrypt_cost", "crypto_decrypt_cost", "crypto_energy_cost"};
  std::vector<std::vector<double>> columns(4);
  bool any_crypto = false;

  for (const auto& [key, value] : values) {
    if (auto it = setters.find(key); it != setters.end()) {
      it->second(key, value);
      continue;
    }
    const auto* hit = std::find_if(std::begin(crypto_keys), std::end(crypto_keys),
                                   [&](const char* name) { return key == name; });
    if (hit == std::end(crypto_keys)) throw std::invalid_argument(fmt::format("unknown scenario config key '{}'", key));
    columns[static_cast<std::size_t>(hit - std::begin(crypto_keys))] = parse_double_list(key, value);
    any_crypto = true;
  }

  if (any_crypto) {
    auto& catalog = c.crypto_catalog;
    std::size_t length = 0;
    for (const auto& col : columns) {
      if (col.empty()) continue;
      if (length != 0 && col.size() != length) throw std::invalid_argument("crypto_* lists must have equal length");
      length = col.size();
    }
    if (length != catalog.size()) {
      for (const auto& col : columns) {
        if (col.empty()) throw std::invalid_argument("resizing the crypto catalog requires all four crypto_* keys");
      }
      catalog.assign(length, CryptoProfile{});
    }
    for (std::size_t l = 0; l < length; ++l) {
      if (!columns[0].empty()) catalog[l].level = static_cast<int>(columns[0][l]);
      if (!columns[1].empty()) catalog[l].encrypt_cost = columns[1][l];
      if (!columns[2].empty()) catalog[l].decrypt_cost = columns[2][l];
      if (!columns[3].empty()) catalog[l].energy_cost = columns[3][l];
    }
  }

  return c;
}

ScenarioConfig scenario_config_from(const KeyValues& values, ScenarioConfig base) {
  auto c = apply_scenario_keys(values, std::move(base));
  validate(c);
  return c;
}

ScenarioConfig read_scenario_config(const std::filesystem::path& path) {
  return scenario_config_from(read_key_values(path));
}

SpectrumPlan spectrum_plan(const ScenarioConfig& config) {
  SpectrumPlan plan;
  plan.mbs_bandwidth = config.partition_factor * config.system_bandwidth;
  const double raw = (1.0 - config.partition_factor) * config.system_bandwidth /
                     (config.subchannel_bandwidth * static_cast<double>(config.num_clusters));
  const auto rounded = static_cast<long>(std::round(raw));
  if (!(raw > 0.0)) {
    spdlog::warn("partition factor {} leaves the SBS tier without spectrum; using N = 1", config.partition_factor);
  } else if (rounded < 1) {
    spdlog::debug("partition factor {} rounds to zero subchannels per cluster; using N = 1", config.partition_factor);
  }
  plan.num_subchannels = static_cast<int>(std::max(1L, rounded));
  return plan;
}

double mbs_path_loss_db(double metres) { return 128.1 + 37.6 * std::log10(metres / 1000.0); }

double sbs_path_loss_db(double metres) { return 140.7 + 36.7 * std::log10(metres / 1000.0); }

void check_invariants(const Scenario& s) {
  const auto u = static_cast<std::size_t>(s.num_imds());
  const auto b = static_cast<std::size_t>(s.num_bs());
  const auto k = static_cast<std::size_t>(s.num_tasks());
  auto fail = [](const char* what) { throw std::logic_error(fmt::format("scenario invariant broken: {}", what)); };
  if (b < 2) fail("need an MBS and at least one SBS");
  if (s.gains.size() != u * b) fail("gain table size");
  if (s.cluster_of_bs.size() != b) fail("cluster table size");
  if (s.tasks.size() != u * k) fail("task table size");
  if (s.deadlines.size() != u || s.max_costs.size() != u) fail("per-IMD limits size");
  if (s.spectrum.num_subchannels < 1) fail("N >= 1");
  for (double g : s.gains) {
    if (!(g > 0.0) || !std::isfinite(g)) fail("gains must be positive and finite");
  }
  std::vector<bool> seen(static_cast<std::size_t>(s.config.num_clusters) + 1, false);
  for (std::size_t bs = 1; bs < b; ++bs) {
    const int c = s.cluster_of_bs[bs];
    if (c < 1 || c > s.config.num_clusters) fail("cluster ids must lie in 1..W");
    seen[static_cast<std::size_t>(c)] = true;
  }
  for (std::size_t c = 1; c < seen.size(); ++c) {
    if (!seen[c]) fail("every cluster id 1..W must be used");
  }
}

Scenario generate_scenario(const ScenarioConfig& config) {
  validate(config);
  Scenario s;
  s.config = config;
  s.spectrum = spectrum_plan(config);

  const auto num_sbs = static_cast<std::size_t>(config.num_sbs);
  const auto num_imds = static_cast<std::size_t>(config.num_imds);
  const auto num_tasks = static_cast<std::size_t>(config.num_tasks_per_imd);

  Rng geometry(derive_seed(config.seed, kGeometryStream));
  s.bs_positions.push_back({0.0, 0.0});
  for (std::size_t b = 0; b < num_sbs; ++b) s.bs_positions.push_back(uniform_in_disc(geometry, config.macrocell_radius));

  // A zero distance has no path loss; such a device is placed again.
  for (std::size_t i = 0; i < num_imds; ++i) {
    Point p;
    do {
      p = uniform_in_disc(geometry, config.macrocell_radius);
    } while (std::any_of(s.bs_positions.begin(), s.bs_positions.end(),
                         [&](const Point& bs) { return distance(p, bs) == 0.0; }));
    s.imd_positions.push_back(p);
  }

  s.gains.reserve(num_imds * (num_sbs + 1));
  for (std::size_t i = 0; i < num_imds; ++i) {
    for (std::size_t b = 0; b <= num_sbs; ++b) {
      const double metres = distance(s.imd_positions[i], s.bs_positions[b]);
      const double loss = b == 0 ? mbs_path_loss_db(metres) : sbs_path_loss_db(metres);
      const double shadow = geometry.normal(0.0, config.shadowing_std_db);
      s.gains.push_back(std::pow(10.0, -(loss + shadow) / 10.0));
    }
  }

  const std::span<const Point> sbs(s.bs_positions.data() + 1, num_sbs);
  s.cluster_of_bs.push_back(0);
  for (int c : cluster_sbs(sbs, config.num_clusters, derive_seed(config.seed, kClusterStream))) {
    s.cluster_of_bs.push_back(c);
  }

  Rng draws(derive_seed(config.seed, kTaskStream));
  auto uniform = [&](const Range& r) { return draws.uniform(r.min, r.max); };
  std::vector<double> finance_loss(num_tasks);
  for (auto& l : finance_loss) l = uniform(config.finance_loss_range);
  const auto levels = static_cast<long>(config.expected_level_set.size());
  for (std::size_t i = 0; i < num_imds; ++i) {
    for (std::size_t k = 0; k < num_tasks; ++k) {
      TaskSpec t;
      t.data_size = uniform(config.data_size_range);
      t.cycles_per_bit = uniform(config.cycles_per_bit_range);
      t.finance_loss = finance_loss[k];
      t.risk_coeff = uniform(config.risk_coeff_range);
      t.expected_level = config.expected_level_set[static_cast<std::size_t>(draws.uniform_int(0, levels - 1))];
      s.tasks.push_back(t);
    }
    s.deadlines.push_back(uniform(config.deadline_range));
    s.max_costs.push_back(uniform(config.max_breach_cost_range));
  }

  check_invariants(s);
  return s;
}

void write_scenario_csv(const Scenario& s, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  {
    CsvWriter bs(dir / "bs.csv", {"bs", "x", "y", "cluster"});
    for (int b = 0; b < s.num_bs(); ++b) {
      const auto& p = s.bs_positions[static_cast<std::size_t>(b)];
      bs.row({std::to_string(b), csv_number(p.x), csv_number(p.y),
              std::to_string(s.cluster_of_bs[static_cast<std::size_t>(b)])});
    }
  }
  {
    CsvWriter imds(dir / "imds.csv", {"imd", "x", "y", "deadline", "max_cost"});
    for (int i = 0; i < s.num_imds(); ++i) {
      const auto idx = static_cast<std::size_t>(i);
      imds.row({std::to_string(i), csv_number(s.imd_positions[idx].x), csv_number(s.imd_positions[idx].y),
                csv_number(s.deadlines[idx]), csv_number(s.max_costs[idx])});
    }
  }
  {
    CsvWriter gains(dir / "gains.csv", {"imd", "bs", "distance", "gain"});
    for (int i = 0; i < s.num_imds(); ++i) {
      for (int b = 0; b < s.num_bs(); ++b) {
        gains.row({std::to_string(i), std::to_string(b),
                   csv_number(distance(s.imd_positions[static_cast<std::size_t>(i)],
                                       s.bs_positions[static_cast<std::size_t>(b)])),
                   csv_number(s.gain(i, b))});
      }
    }
  }
  {
    CsvWriter tasks(dir / "tasks.csv",
                    {"imd", "task", "data_size", "cycles_per_bit", "finance_loss", "risk_coeff", "expected_level"});
    for (int i = 0; i < s.num_imds(); ++i) {
      for (int k = 0; k < s.num_tasks(); ++k) {
        const auto& t = s.task(i, k);
        tasks.row({std::to_string(i), std::to_string(k), csv_number(t.data_size), csv_number(t.cycles_per_bit),
                   csv_number(t.finance_loss), csv_number(t.risk_coeff), std::to_string(t.expected_level)});
      }
    }
  }
  {
    CsvWriter crypto(dir / "crypto.csv", {"algorithm", "level", "encrypt_cost", "decrypt_cost", "energy_cost"});
    for (int l = 1; l <= s.num_crypto(); ++l) {
      const auto& p = s.crypto(l);
      crypto.row({std::to_string(l), std::to_string(p.level), csv_number(p.encrypt_cost),
                  csv_number(p.decrypt_cost), csv_number(p.energy_cost)});
    }
  }
}

}  // namespace offload
