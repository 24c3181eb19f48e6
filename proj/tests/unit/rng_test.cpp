#include <gtest/gtest.h>

#include <set>

#include "offload/rng.hpp"

using offload::Rng;

TEST(Rng, SameSeedSameStream) {
  Rng a(99), b(99);
  for (int i = 0; i < 1000; ++i) ASSERT_EQ(a.uniform(), b.uniform());
}

TEST(Rng, UniformStaysInHalfOpenUnitInterval) {
  Rng r(3);
  for (int i = 0; i < 100000; ++i) {
    const double u = r.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    const double v = r.uniform_open_left();
    ASSERT_GT(v, 0.0);
    ASSERT_LE(v, 1.0);
  }
}

TEST(Rng, UniformIntCoversInclusiveRange) {
  Rng r(5);
  std::set<long> seen;
  for (int i = 0; i < 10000; ++i) {
    const long v = r.uniform_int(-2, 3);
    ASSERT_GE(v, -2);
    ASSERT_LE(v, 3);
    seen.insert(v);
  }
  EXPECT_EQ(seen.size(), 6u);
}

TEST(Rng, NormalHasRoughlyUnitMoments) {
  Rng r(11);
  const int n = 200000;
  double sum = 0.0, sq = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = r.normal();
    sum += x;
    sq += x * x;
  }
  EXPECT_NEAR(sum / n, 0.0, 0.01);
  EXPECT_NEAR(sq / n, 1.0, 0.02);
}

TEST(Rng, DerivedStreamsDiffer) {
  std::set<std::uint64_t> seeds;
  for (std::uint64_t stream = 0; stream < 100; ++stream) seeds.insert(offload::derive_seed(1, stream));
  for (std::uint64_t seed = 0; seed < 100; ++seed) seeds.insert(offload::derive_seed(seed, 1000));
  EXPECT_EQ(seeds.size(), 200u);
}
