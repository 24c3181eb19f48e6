#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "offload/evaluator.hpp"
#include "offload/oracle.hpp"
#include "world.hpp"

using namespace offload;
using namespace offload::testing;

namespace {

constexpr double kOmega = 1e6;  // default subchannel bandwidth
constexpr double kRel = 1e-12;

// Noise 1e-11 and gain 1e-10 give SNR = 1 at 0.1 mW.
constexpr double kUnitSnrPower = 0.1;

}  // namespace

TEST(UplinkRateSbs, UnitSnrGivesOneBitPerHertz) {
  auto s = make_world(1, 1, 1);
  auto d = idle_decision(s);
  d.bs[0] = 1;
  d.power[0] = kUnitSnrPower;
  EXPECT_NEAR(uplink_rate_sbs(s, d, 0), kOmega, kOmega * kRel);
}

TEST(UplinkRateSbs, WeakerCoChannelUserInterferesWithTheStrongerOne) {
  auto s = make_world(2, 1, 1);
  gain_at(s, 0, 1) = 2e-10;
  auto d = idle_decision(s);
  d.bs = {1, 1};
  d.power = {0.05, kUnitSnrPower};  // both p*h equal to the noise power
  EXPECT_NEAR(uplink_rate_sbs(s, d, 0), kOmega * std::log2(1.5), kOmega * kRel);
  EXPECT_NEAR(uplink_rate_sbs(s, d, 1), kOmega, kOmega * kRel);
}

TEST(UplinkRateSbs, OtherClustersDoNotInterfere) {
  auto s = make_world(2, 2, 1);
  s.cluster_of_bs[2] = 2;
  auto d = idle_decision(s);
  d.bs = {1, 2};
  d.power = {kUnitSnrPower, kUnitSnrPower};
  EXPECT_NEAR(uplink_rate_sbs(s, d, 0), kOmega, kOmega * kRel);
  EXPECT_NEAR(uplink_rate_sbs(s, d, 1), kOmega, kOmega * kRel);
}

TEST(UplinkRateSbs, OtherChannelsDoNotInterfere) {
  auto s = make_world(2, 1, 1);
  auto d = idle_decision(s);
  d.bs = {1, 1};
  d.channel = {1, 2};
  d.power = {kUnitSnrPower, kUnitSnrPower};
  EXPECT_NEAR(uplink_rate_sbs(s, d, 0), kOmega, kOmega * kRel);
}

TEST(UplinkRateMbs, TwoUsersSplitTheMacroBand) {
  auto s = make_world(2, 1, 1);
  ASSERT_EQ(s.spectrum.mbs_bandwidth, 1e7);
  auto d = idle_decision(s);
  d.power = {0.3, 0.3};  // SNR 3
  EXPECT_NEAR(uplink_rate_mbs(s, d, 0), 5e6 * std::log2(4.0), 1e7 * kRel);
  EXPECT_NEAR(uplink_rate_mbs(s, d, 0), 1e7, 1e7 * kRel);
}

TEST(UplinkRateMbs, SoleUserAtUnitSnrGetsTheWholeBand) {
  auto s = make_world(1, 1, 1);
  auto d = idle_decision(s);
  d.power[0] = kUnitSnrPower;
  EXPECT_NEAR(uplink_rate_mbs(s, d, 0), s.config.partition_factor * s.config.system_bandwidth, 1e7 * kRel);
}

TEST(UplinkRateMbs, NoMacroSpectrumMeansNoRateAndInfiniteTime) {
  auto s = make_world(1, 1, 1);
  s.config.partition_factor = 0.0;
  s.spectrum.mbs_bandwidth = 0.0;
  auto d = idle_decision(s);
  d.power[0] = s.config.max_power;
  EXPECT_EQ(uplink_rate_mbs(s, d, 0), 0.0);
  d.offload[0] = 5e5;
  EXPECT_TRUE(std::isinf(remote_time_mbs(s, d, 0, 0)));
  const auto r = fitness(s, d);
  EXPECT_TRUE(std::isinf(r.total_energy));
  EXPECT_EQ(r.fitness, -std::numeric_limits<double>::infinity());
  EXPECT_FALSE(r.feasible);
}

TEST(UplinkRateMbs, AskingTheWrongTierIsALogicError) {
  auto s = make_world(1, 1, 1);
  auto d = idle_decision(s);
  EXPECT_THROW(uplink_rate_sbs(s, d, 0), std::logic_error);
  d.bs[0] = 1;
  EXPECT_THROW(uplink_rate_mbs(s, d, 0), std::logic_error);
}

TEST(SbsComputeShare, SoleClaimantGetsEverything) {
  auto s = make_world(1, 1, 1);
  auto d = idle_decision(s);
  d.bs[0] = 1;
  d.offload[0] = 5e5;
  EXPECT_EQ(sbs_compute_share(s, d, 0, 0), s.config.f_bs);
}

TEST(SbsComputeShare, IdenticalTasksSplitEvenly) {
  auto s = make_world(1, 1, 2);
  auto d = idle_decision(s);
  d.bs[0] = 1;
  d.offload = {5e5, 5e5};
  EXPECT_NEAR(sbs_compute_share(s, d, 0, 0), s.config.f_bs / 2, s.config.f_bs * kRel);
  EXPECT_NEAR(sbs_compute_share(s, d, 0, 1), s.config.f_bs / 2, s.config.f_bs * kRel);
}

TEST(SbsComputeShare, SharesFollowWorkload) {
  auto s = make_world(1, 1, 2);
  auto d = idle_decision(s);
  d.bs[0] = 1;
  d.offload = {2e5, 1e5};  // workloads (c + decrypt) * offload, ratio 2:1
  EXPECT_NEAR(sbs_compute_share(s, d, 0, 0), s.config.f_bs * 2 / 3, s.config.f_bs * kRel);
  EXPECT_NEAR(sbs_compute_share(s, d, 0, 1), s.config.f_bs / 3, s.config.f_bs * kRel);
}

TEST(SbsComputeShare, EmptyServerFallsBackToFullCapacity) {
  auto s = make_world(1, 1, 1);
  auto d = idle_decision(s);
  d.bs[0] = 1;
  d.offload[0] = 0.0;
  d.relay[0] = 0.0;
  EXPECT_EQ(sbs_compute_share(s, d, 0, 0), s.config.f_bs);
  EXPECT_EQ(mbs_compute_share(s, d, 0, 0), s.config.f_bs);
}

TEST(MbsComputeShare, SoleMacroTaskGetsEverything) {
  auto s = make_world(2, 1, 1);
  auto d = idle_decision(s);
  d.bs = {0, 1};
  d.offload[0] = 5e5;
  EXPECT_NEAR(mbs_compute_share(s, d, 0, 0), s.config.f_bs, s.config.f_bs * kRel);
}

TEST(MbsComputeShare, IdenticalTasksSplitEvenly) {
  auto s = make_world(2, 1, 1);
  auto d = idle_decision(s);
  d.offload = {5e5, 5e5};
  EXPECT_NEAR(mbs_compute_share(s, d, 1, 0), s.config.f_bs / 2, s.config.f_bs * kRel);
}

TEST(MbsComputeShare, RelayedAndDirectTasksShareByWorkload) {
  auto s = make_world(2, 1, 1);
  auto d = idle_decision(s);
  d.bs = {1, 0};
  d.offload = {3e5, 1e5};
  d.relay = {3e5, s.config.data_floor};
  EXPECT_NEAR(mbs_compute_share(s, d, 0, 0), s.config.f_bs * 3 / 4, s.config.f_bs * kRel);
  EXPECT_NEAR(mbs_compute_share(s, d, 1, 0), s.config.f_bs / 4, s.config.f_bs * kRel);
}

TEST(LocalTime, NothingOffloadedIsPureComputation) {
  auto s = make_world(1, 1, 1);
  const auto d = idle_decision(s);
  EXPECT_NEAR(local_time(s, d, 0, 0), 1e6 * 50 / 1e9, 1e-15);
}

TEST(LocalTime, FullOffloadLeavesOnlyEncryption) {
  auto s = make_world(1, 1, 1);
  task_at(s, 0, 0).data_size = 1.6e6;
  auto d = idle_decision(s);
  d.offload[0] = 1.6e6;
  EXPECT_NEAR(local_time(s, d, 0, 0), 0.16, 1e-15);
}

TEST(LocalTime, HalfOffloadMixesComputeAndEncryption) {
  auto s = make_world(1, 1, 1);
  task_at(s, 0, 0).data_size = 3.2e6;
  auto d = idle_decision(s);
  d.offload[0] = 1.6e6;
  EXPECT_NEAR(local_time(s, d, 0, 0), (1.6e6 * 50 + 1.6e6 * 100) / 1e9, 1e-15);
  EXPECT_NEAR(local_time(s, d, 0, 0), 0.24, 1e-15);
}

TEST(RemoteTimeSbs, TermByTerm) {
  // Two identical devices on one SBS and different channels: each gets half of
  // 2e10 cycles/s at both servers and a 1e6 bit/s uplink.
  auto s = make_world(2, 1, 1);
  auto d = idle_decision(s);
  d.bs = {1, 1};
  d.channel = {1, 2};
  d.power = {kUnitSnrPower, kUnitSnrPower};
  d.offload = {1e6, 1e6};
  d.relay = {5e5, 5e5};
  const DecisionContext ctx(s, d);
  ASSERT_NEAR(ctx.uplink_rate(0), 1e6, 1e6 * kRel);
  ASSERT_NEAR(ctx.sbs_compute_share(0, 0), 1e10, 1e10 * kRel);
  ASSERT_NEAR(ctx.mbs_compute_share(0, 0), 1e10, 1e10 * kRel);
  const double expected = 1e6 / 1e6 + 5e5 * 50 / 1e10 + 5e5 / 1e9 + 5e5 * 50 / 1e10 + 90 * 1e6 / 1e10 +
                          100 * 5e5 / 1e10 + 90 * 5e5 / 1e10;
  EXPECT_NEAR(expected, 1.024, 1e-12);
  EXPECT_NEAR(ctx.remote_time_sbs(0, 0), 1.024, 1e-9);
}

TEST(RemoteTimeSbs, FullRelaySkipsSbsCompute) {
  auto s = make_world(1, 1, 1);
  auto d = idle_decision(s);
  d.bs[0] = 1;
  d.power[0] = kUnitSnrPower;
  d.offload[0] = 1e6;
  d.relay[0] = 1e6;
  const DecisionContext ctx(s, d);
  const double fs = ctx.sbs_compute_share(0, 0);
  const double f0 = ctx.mbs_compute_share(0, 0);
  const double expected = 1e6 / ctx.uplink_rate(0) + 1e6 / 1e9 + 1e6 * 50 / f0 + 90 * 1e6 / fs + 100 * 1e6 / fs +
                          90 * 1e6 / f0;
  EXPECT_NEAR(ctx.remote_time_sbs(0, 0), expected, expected * kRel);
}

TEST(RemoteTimeSbs, FloorsGiveNearZero) {
  auto s = make_world(1, 1, 1);
  auto d = idle_decision(s);
  d.bs[0] = 1;
  d.power[0] = kUnitSnrPower;
  EXPECT_LT(remote_time_sbs(s, d, 0, 0), 1e-12);
  // At the power floor the rate is ~1e-13 bit/s, so even 1e-20 bits take ~7e-8 s.
  d.power[0] = s.config.power_floor;
  EXPECT_NEAR(remote_time_sbs(s, d, 0, 0), 1e-20 / (kOmega * std::log1p(1e-20 * 1e-10 / 1e-11) / std::log(2.0)), 1e-15);
}

TEST(RemoteTimeMbs, TermByTerm) {
  auto s = make_world(2, 1, 1);
  auto d = idle_decision(s);
  d.power = {0.3, 0.3};
  d.offload = {1e6, 1e6};
  EXPECT_NEAR(remote_time_mbs(s, d, 0, 0), 0.1 + 0.005 + 0.009, 1e-12);
}

TEST(RemoteTimeMbs, FloorsGiveNearZero) {
  auto s = make_world(1, 1, 1);
  auto d = idle_decision(s);
  d.power[0] = kUnitSnrPower;
  EXPECT_LT(remote_time_mbs(s, d, 0, 0), 1e-12);
  d.power[0] = s.config.power_floor;
  EXPECT_LT(remote_time_mbs(s, d, 0, 0), 1e-7);
}

TEST(TotalDelay, SumsTheSlowerSideOfEachTask) {
  auto s = make_world(1, 1, 2);
  auto d = idle_decision(s);
  d.power[0] = kUnitSnrPower;
  d.offload = {4e5, 6e5};
  const DecisionContext ctx(s, d);
  double expected = 0.0;
  for (int k = 0; k < 2; ++k) expected += std::max(ctx.local_time(0, k), ctx.remote_time(0, k));
  EXPECT_EQ(ctx.total_delay(0), expected);
}

TEST(TotalDelay, NothingOffloadedIsTheLocalSum) {
  auto s = make_world(1, 1, 3);
  task_at(s, 0, 1).cycles_per_bit = 80;
  EXPECT_NEAR(total_delay(s, idle_decision(s), 0), (50 + 80 + 50) * 1e6 / 1e9, 1e-12);
}

TEST(FailureProbability, AtOrAboveTheExpectedLevelIsZero) {
  const TaskSpec t{1e6, 50, 1, 2, 6};
  EXPECT_EQ(failure_probability(t, 6), 0.0);
  EXPECT_EQ(failure_probability(t, 7), 0.0);
}

TEST(FailureProbability, Examples) {
  EXPECT_NEAR(failure_probability(TaskSpec{1e6, 50, 1, 2, 6}, 5), 1 - std::exp(-2.0), 1e-15);
  EXPECT_NEAR(failure_probability(TaskSpec{1e6, 50, 1, 2, 6}, 5), 0.864665, 1e-6);
  EXPECT_NEAR(failure_probability(TaskSpec{1e6, 50, 1, 1, 6}, 1), 0.993262, 1e-6);
}

TEST(BreachCost, StrongEnoughAlgorithmsCostNothing) {
  auto s = make_world(1, 1, 3);
  auto d = idle_decision(s);
  d.crypto = {6, 6, 6};
  EXPECT_EQ(breach_cost(s, d, 0), 0.0);
}

TEST(BreachCost, SingleTaskIsLossTimesProbability) {
  auto s = make_world(1, 1, 1);
  task_at(s, 0, 0) = TaskSpec{1e6, 50, 2.0, std::log(2.0), 6};
  auto d = idle_decision(s);
  d.crypto[0] = 5;
  EXPECT_NEAR(breach_cost(s, d, 0), 1.0, 1e-15);
}

TEST(BreachCost, WeightedSumOverTasks) {
  auto s = make_world(1, 1, 3);
  task_at(s, 0, 0) = TaskSpec{1e6, 50, 1.0, 1.0, 5};
  task_at(s, 0, 1) = TaskSpec{1e6, 50, 2.0, 2.0, 6};
  task_at(s, 0, 2) = TaskSpec{1e6, 50, 3.0, 1.0, 6};
  auto d = idle_decision(s);
  d.crypto = {5, 5, 1};
  const double expected = 1.0 * 0.0 + 2.0 * (1 - std::exp(-2.0)) + 3.0 * (1 - std::exp(-5.0));
  EXPECT_NEAR(breach_cost(s, d, 0), expected, 1e-12);
  EXPECT_NEAR(breach_cost(s, d, 0), 4.7092, 1e-4);
}

TEST(TotalEnergy, NothingOffloadedIsComputeOnly) {
  auto s = make_world(2, 1, 2);
  const double expected = 4 * s.config.energy_coeff * 1e6 * 50 * 1e18;
  EXPECT_NEAR(total_energy(s, idle_decision(s)), expected, expected * 1e-12);
}

TEST(TotalEnergy, LocalComputeExample) {
  auto s = make_world(1, 1, 1);
  s.config.energy_coeff = 1e-27;
  task_at(s, 0, 0).data_size = 3.2e6;
  task_at(s, 0, 0).cycles_per_bit = 75;
  EXPECT_NEAR(total_energy(s, idle_decision(s)), 0.24, 1e-12);
}

TEST(TotalEnergy, FullOffloadIsEncryptionPlusUpload) {
  auto s = make_world(1, 1, 1);
  gain_at(s, 0, 1) = 1e-13;  // SNR 1 at 100 mW
  auto d = idle_decision(s);
  d.bs[0] = 1;
  d.power[0] = 100.0;
  d.offload[0] = 1e6;
  EXPECT_NEAR(uplink_rate_sbs(s, d, 0), 1e6, 1e-6);
  EXPECT_NEAR(total_energy(s, d), 2.5296e-7 * 1e6 + 0.1 * 1e6 / 1e6, 1e-12);
  EXPECT_NEAR(total_energy(s, d), 0.35296, 1e-12);
}

TEST(Fitness, FeasibleDecisionScoresMinusEnergy) {
  auto s = make_world(2, 1, 2);
  const auto r = fitness(s, idle_decision(s));
  EXPECT_TRUE(r.feasible);
  EXPECT_EQ(r.fitness, -r.total_energy);
}

TEST(Fitness, OneSecondLateCostsAlpha) {
  auto s = make_world(1, 1, 1);
  task_at(s, 0, 0).data_size = 4e7;  // 2 s locally
  s.deadlines[0] = 1.0;
  const auto r = fitness(s, idle_decision(s), Penalties{1e4, 1e4});
  EXPECT_FALSE(r.feasible);
  EXPECT_NEAR(r.delay_violation[0], 1.0, 1e-12);
  EXPECT_NEAR(r.fitness, -r.total_energy - 1e4, 1e-8);
}

TEST(Fitness, BothPenaltiesMatchTheReferenceModel) {
  auto s = make_world(2, 2, 2);
  s.cluster_of_bs[2] = 2;
  gain_at(s, 1, 2) = 3e-11;
  for (int k = 0; k < 2; ++k) {
    task_at(s, 0, k) = TaskSpec{3e7, 60, 4.0, 2.0, 6};
    task_at(s, 1, k) = TaskSpec{2e6, 90, 3.0, 1.5, 5};
  }
  s.deadlines = {0.5, 0.2};
  s.max_costs = {1.0, 0.5};
  auto d = idle_decision(s);
  d.bs = {1, 2};
  d.power = {50.0, 150.0};
  d.offload = {1e7, 5e6, 1e6, 2e6};
  d.relay = {2e6, 5e6, 1e5, 1e6};
  d.crypto = {2, 4, 3, 1};
  const Penalties p{1e4, 3e3};
  const auto r = fitness(s, d, p);
  const auto ref = oracle::evaluate(s, d, p.alpha, p.beta);
  double dt = 0.0, dc = 0.0;
  for (int i = 0; i < 2; ++i) {
    dt += std::max(0.0, ref.delay[static_cast<std::size_t>(i)] - s.deadlines[static_cast<std::size_t>(i)]);
    dc += std::max(0.0, ref.cost[static_cast<std::size_t>(i)] - s.max_costs[static_cast<std::size_t>(i)]);
  }
  ASSERT_GT(dt, 0.0);
  ASSERT_GT(dc, 0.0);
  EXPECT_NEAR(r.total_energy, ref.energy, ref.energy * 1e-12);
  EXPECT_NEAR(r.fitness, -ref.energy - p.alpha * dt - p.beta * dc, std::abs(ref.fitness) * 1e-12);
}

TEST(Fitness, DefaultPenaltiesComeFromTheScenario) {
  auto s = make_world(1, 1, 1);
  s.deadlines[0] = 0.0;
  s.config.penalty_alpha = 7.0;
  const auto r = fitness(s, idle_decision(s));
  EXPECT_NEAR(r.fitness, -r.total_energy - 7.0 * r.delay[0], 1e-12);
}
