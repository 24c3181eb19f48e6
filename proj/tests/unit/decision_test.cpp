#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <stdexcept>

#include "offload/decision.hpp"
#include "offload/rng.hpp"
#include "world.hpp"

using namespace offload;
using offload::testing::idle_decision;
using offload::testing::make_world;
using Seg = GeneLayout::Segment;

namespace {

Scenario default_world() { return generate_scenario(ScenarioConfig{}); }

}  // namespace

TEST(GeneLayout, SegmentsTileTheGenome) {
  const GeneLayout layout(4, 3);
  EXPECT_EQ(layout.size(), 3u * 4u + 3u * 12u);
  std::size_t next = 0;
  for (auto seg : {Seg::Bs, Seg::Crypto, Seg::Channel, Seg::Power, Seg::Offload, Seg::Relay}) {
    EXPECT_EQ(layout.offset(seg), next);
    next += layout.length(seg);
  }
  EXPECT_EQ(next, layout.size());
  EXPECT_TRUE(layout.is_integer(layout.offset(Seg::Channel)));
  EXPECT_FALSE(layout.is_integer(layout.offset(Seg::Power)));
}

TEST(Repair, NegativeBsGeneClampsToMacro) {
  const auto s = default_world();
  ASSERT_EQ(s.num_sbs(), 30);
  auto g = encode(idle_decision(s));
  g[0] = -3.0;
  EXPECT_EQ(repair(s, g).bs[0], 0);
  g[0] = 99.0;
  EXPECT_EQ(repair(s, g).bs[0], 30);
  g[0] = 4.4;
  EXPECT_EQ(repair(s, g).bs[0], 4);
}

TEST(Repair, RelayNeverExceedsOffload) {
  auto s = make_world(1, 1, 1);
  auto d = idle_decision(s);
  d.offload[0] = 3.0;
  d.relay[0] = 5.0;
  EXPECT_EQ(repair(s, d).relay[0], 3.0);
}

TEST(Repair, PowerClampsToMaximum) {
  auto s = make_world(1, 1, 1);
  auto d = idle_decision(s);
  d.power[0] = 1e9;
  EXPECT_EQ(repair(s, d).power[0], s.config.max_power);
  d.power[0] = -1.0;
  EXPECT_EQ(repair(s, d).power[0], s.config.power_floor);
}

TEST(Repair, OffloadClampsToDataSize) {
  auto s = make_world(1, 1, 1);
  auto d = idle_decision(s);
  d.offload[0] = 5e6;
  d.relay[0] = 4e6;
  const auto r = repair(s, d);
  EXPECT_EQ(r.offload[0], 1e6);
  EXPECT_EQ(r.relay[0], 1e6);
}

TEST(Repair, NanGoesToTheLowerBound) {
  const auto s = default_world();
  const GeneLayout layout(s);
  Genome g(layout.size(), std::numeric_limits<double>::quiet_NaN());
  const auto d = repair(s, g);
  for (int b : d.bs) EXPECT_EQ(b, 0);
  for (int c : d.channel) EXPECT_EQ(c, 1);
  for (int c : d.crypto) EXPECT_EQ(c, 1);
  for (double p : d.power) EXPECT_EQ(p, s.config.power_floor);
  for (double x : d.offload) EXPECT_EQ(x, s.config.data_floor);
  for (double x : d.relay) EXPECT_EQ(x, s.config.data_floor);
}

TEST(Repair, WrongLengthIsRejected) {
  const auto s = default_world();
  EXPECT_THROW(repair(s, Genome(3, 0.0)), std::invalid_argument);
}

TEST(Repair, ArbitraryGenomesBecomeValidAndStayFixed) {
  const auto s = default_world();
  const GeneLayout layout(s);
  Rng rng(77);
  for (int trial = 0; trial < 200; ++trial) {
    Genome g(layout.size());
    for (double& x : g) x = rng.normal() * std::pow(10.0, rng.uniform(-3.0, 8.0));
    const auto d = repair(s, g);
    ASSERT_TRUE(is_valid(s, d));
    EXPECT_EQ(repair(s, d), d);
    EXPECT_EQ(repair(s, encode(d)), d);
  }
}

TEST(Repair, IsValidSpotsEachBrokenGene) {
  const auto s = default_world();
  const auto ok = idle_decision(s);
  ASSERT_TRUE(is_valid(s, ok));
  auto bad = ok;
  bad.bs[0] = 31;
  EXPECT_FALSE(is_valid(s, bad));
  bad = ok;
  bad.channel[0] = 0;
  EXPECT_FALSE(is_valid(s, bad));
  bad = ok;
  bad.crypto[0] = 7;
  EXPECT_FALSE(is_valid(s, bad));
  bad = ok;
  bad.relay[0] = 1.0;
  EXPECT_FALSE(is_valid(s, bad));
  bad = ok;
  bad.power.pop_back();
  EXPECT_FALSE(is_valid(s, bad));
}
