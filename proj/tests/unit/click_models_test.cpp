#include <gtest/gtest.h>

#include <cmath>

#include "oltr/click_models.hpp"
#include "oltr/data_ingest.hpp"

using namespace oltr;

namespace {

const PositionBias kBias({0.95, 0.90, 0.85});

// Binomial standard error of a rate p estimated from n rounds.
double std_error(double p, double n) { return std::sqrt(p * (1 - p) / n); }

}  // namespace

TEST(CascadeSimulate, ZeroAttractionScansEverything) {
  RngStream rng(1);
  const AttractionProfile w(std::vector<double>(5, 0.0));
  const auto fb = cascade_simulate(RankedList{1, 2, 3}, w, rng);
  EXPECT_EQ(fb.exam, (std::vector<std::uint8_t>{1, 1, 1}));
  EXPECT_EQ(fb.clicks, (std::vector<std::uint8_t>{0, 0, 0}));
  EXPECT_FALSE(fb.manipulated);
}

TEST(CascadeSimulate, CertainFirstClickStopsScan) {
  RngStream rng(1);
  const AttractionProfile w({1.0, 0.5, 0.5});
  const auto fb = cascade_simulate(RankedList{1, 2, 3}, w, rng);
  EXPECT_EQ(fb.exam, (std::vector<std::uint8_t>{1, 0, 0}));
  EXPECT_EQ(fb.clicks, (std::vector<std::uint8_t>{1, 0, 0}));
}

TEST(CascadeSimulate, FirstPositionClickRate) {
  RngStream rng(2024);
  const AttractionProfile w({0.5, 0.3, 0.2});
  constexpr int n = 1000000;
  int clicks = 0;
  for (int i = 0; i < n; ++i) clicks += cascade_simulate(RankedList{1, 2, 3}, w, rng).clicks[0];
  EXPECT_NEAR(static_cast<double>(clicks) / n, 0.5, 3 * std_error(0.5, n));
}

TEST(PbmSimulate, ZeroAttractionNeverClicks) {
  RngStream rng(5);
  const AttractionProfile w(std::vector<double>(4, 0.0));
  for (int i = 0; i < 1000; ++i) {
    const auto fb = pbm_simulate(RankedList{1, 2, 3}, w, kBias, rng);
    ASSERT_EQ(fb.click_count(), 0u);
  }
}

TEST(PbmSimulate, CertainExaminationAndClick) {
  RngStream rng(5);
  const AttractionProfile w({1.0, 0.2, 0.2});
  const PositionBias p({1.0, 0.5, 0.5});
  for (int i = 0; i < 1000; ++i) ASSERT_EQ(pbm_simulate(RankedList{1, 2, 3}, w, p, rng).clicks[0], 1);
}

TEST(PbmSimulate, FirstPositionClickRate) {
  RngStream rng(77);
  const auto w = movielens10_profile();
  constexpr int n = 1000000;
  int clicks = 0;
  for (int i = 0; i < n; ++i) clicks += pbm_simulate(RankedList{1, 2, 3}, w, kBias, rng).clicks[0];
  const double p = 0.95 * 0.336;
  EXPECT_NEAR(static_cast<double>(clicks) / n, p, 3 * std_error(p, n));
}

TEST(PbmSimulate, ConsumesExactlyTwoKDraws) {
  RngStream a(9), b(9);
  const auto w = movielens10_profile();
  pbm_simulate(RankedList{1, 2, 3}, w, kBias, a);
  for (int i = 0; i < 6; ++i) b.next_u64();
  EXPECT_EQ(a.next_u64(), b.next_u64());
}

TEST(CascadeSynthesize, ClickPositions) {
  const RankedList list{4, 7, 10};
  auto fb = cascade_synthesize(list, 1);
  EXPECT_EQ(fb.exam, (std::vector<std::uint8_t>{1, 0, 0}));
  EXPECT_EQ(fb.clicks, (std::vector<std::uint8_t>{1, 0, 0}));
  EXPECT_TRUE(fb.manipulated);

  fb = cascade_synthesize(list, std::nullopt);
  EXPECT_EQ(fb.exam, (std::vector<std::uint8_t>{1, 1, 1}));
  EXPECT_EQ(fb.clicks, (std::vector<std::uint8_t>{0, 0, 0}));

  fb = cascade_synthesize(list, 3);
  EXPECT_EQ(fb.exam, (std::vector<std::uint8_t>{1, 1, 1}));
  EXPECT_EQ(fb.clicks, (std::vector<std::uint8_t>{0, 0, 1}));

  EXPECT_THROW(cascade_synthesize(list, 0), ValidationError);
  EXPECT_THROW(cascade_synthesize(list, 4), ValidationError);
}

TEST(ExpectedReward, ReferenceValues) {
  const auto w = movielens10_profile();
  const auto cascade = ClickModelKind::cascade();
  const auto pbm = ClickModelKind::pbm(kBias);
  EXPECT_NEAR(expected_reward(cascade, RankedList{1, 2, 3}, w), 0.557608672, 1e-9);
  EXPECT_NEAR(expected_reward(pbm, RankedList{1, 2, 3}, w), 0.64135, 1e-9);
  const AttractionProfile zero(std::vector<double>(10, 0.0));
  EXPECT_EQ(expected_reward(cascade, RankedList{1, 2, 3}, zero), 0.0);
  EXPECT_EQ(expected_reward(pbm, RankedList{1, 2, 3}, zero), 0.0);
}

TEST(ExpectedReward, CascadeIsPermutationInvariant) {
  const auto w = movielens10_profile();
  const auto cascade = ClickModelKind::cascade();
  EXPECT_EQ(expected_reward(cascade, RankedList{1, 2, 3}, w), expected_reward(cascade, RankedList{3, 1, 2}, w));
  EXPECT_EQ(per_round_regret(cascade, RankedList{2, 3, 1}, w), 0.0);
}

TEST(PerRoundRegret, ReferenceValues) {
  const auto w = movielens10_profile();
  EXPECT_EQ(per_round_regret(ClickModelKind::cascade(), RankedList{1, 2, 3}, w), 0.0);
  EXPECT_NEAR(per_round_regret(ClickModelKind::cascade(), RankedList{4, 7, 10}, w), 0.281336922, 1e-9);
  EXPECT_NEAR(per_round_regret(ClickModelKind::pbm(kBias), RankedList{8, 9, 10}, w), 0.40875, 1e-9);
}

TEST(ClickModelKind, CascadeHasNoBias) {
  EXPECT_THROW(ClickModelKind::cascade().bias(), ValidationError);
  EXPECT_EQ(ClickModelKind::pbm(kBias).bias(), kBias);
}
