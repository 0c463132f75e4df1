#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "oltr/rng.hpp"

using oltr::RngStream;

TEST(Rng, SameSeedSameStream) {
  RngStream a(42), b(42);
  for (int i = 0; i < 1000; ++i) ASSERT_EQ(a.next_u64(), b.next_u64());
}

TEST(Rng, ChannelsAreDisjoint) {
  auto env = RngStream::for_channel(7, 0);
  auto adv = RngStream::for_channel(7, 1);
  std::set<std::uint64_t> seen;
  for (int i = 0; i < 10000; ++i) seen.insert(env.next_u64());
  int collisions = 0;
  for (int i = 0; i < 10000; ++i) collisions += seen.count(adv.next_u64()) ? 1 : 0;
  EXPECT_EQ(collisions, 0);
}

TEST(Rng, ChannelZeroIsThePlainSeed) {
  RngStream plain(99);
  auto ch0 = RngStream::for_channel(99, 0);
  for (int i = 0; i < 16; ++i) ASSERT_EQ(plain.next_u64(), ch0.next_u64());
}

TEST(Rng, RunSeedsDiffer) {
  std::set<std::uint64_t> seeds;
  for (std::uint64_t i = 0; i < 1000; ++i) seeds.insert(RngStream::run_seed(0, i));
  EXPECT_EQ(seeds.size(), 1000u);
  EXPECT_EQ(RngStream::run_seed(5, 3), RngStream::run_seed(5, 3));
  EXPECT_NE(RngStream::run_seed(5, 3), RngStream::run_seed(6, 3));
}

TEST(Rng, UniformInHalfOpenUnitInterval) {
  RngStream r(1);
  double sum = 0;
  constexpr int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double u = r.uniform01();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
  }
  EXPECT_NEAR(sum / n, 0.5, 3 * std::sqrt(1.0 / 12 / n));
}

TEST(Rng, BernoulliEdges) {
  RngStream r(3);
  for (int i = 0; i < 1000; ++i) {
    ASSERT_FALSE(r.bernoulli(0.0));
    ASSERT_TRUE(r.bernoulli(1.0));
  }
}

TEST(Rng, BelowIsInRangeAndCoversIt) {
  RngStream r(11);
  std::set<std::uint64_t> seen;
  for (int i = 0; i < 2000; ++i) {
    const auto v = r.below(7);
    ASSERT_LT(v, 7u);
    seen.insert(v);
  }
  EXPECT_EQ(seen.size(), 7u);
}
