#include <gtest/gtest.h>

#include <cmath>

#include "oltr/attacks.hpp"

using namespace oltr;

// Frozen values come from tests/oracles/phase_lengths.py (mpmath, 50 digits).

namespace {

const PositionBias kBias({0.95, 0.90, 0.85});

TargetSpec targets_4_7_10() {
  const std::vector<ItemId> s{item(4), item(7), item(10)};
  return TargetSpec::make(s, 3, 10);
}

}  // namespace

TEST(TargetSpec, PadsWithSmallestNonTargets) {
  const std::vector<ItemId> s{item(7), item(1)};
  const auto spec = TargetSpec::make(s, 4, 10);
  EXPECT_EQ(spec.target_list, (RankedList{7, 1, 2, 3}));
  EXPECT_EQ(spec.target_set.size(), 2u);
  EXPECT_TRUE(spec.in_target_list(item(3)));
  EXPECT_FALSE(spec.in_target_list(item(4)));
}

TEST(TargetSpec, Errors) {
  EXPECT_THROW(TargetSpec::make(std::vector<ItemId>{}, 3, 10), ValidationError);
  const std::vector<ItemId> four{item(1), item(2), item(3), item(4)};
  EXPECT_THROW(TargetSpec::make(four, 3, 10), ValidationError);
  const std::vector<ItemId> outside{item(11)};
  EXPECT_THROW(TargetSpec::make(outside, 3, 10), ValidationError);
}

TEST(DeriveWm, Examples) {
  // 0.082 is the smallest reference attraction; 1 - 0.08/0.082 gives w_m = 0.08.
  EXPECT_NEAR(derive_wm_cascade(0.082, 3, 1.0 - 0.08 / 0.082), 0.08, 1e-15);
  EXPECT_DOUBLE_EQ(derive_wm_cascade(1.0, 2, 0.5), 0.25);
  EXPECT_THROW(derive_wm_cascade(0.5, 2, 1.0), ValidationError);
  EXPECT_THROW(derive_wm_cascade(0.5, 2, 0.0), ValidationError);
}

TEST(CascadeOfaParams, ReferenceSettings) {
  const auto s = cascade_ofa_params(1.5, 500000, 3, 10, 0.08);
  EXPECT_EQ(s.T1, 10260u);
  EXPECT_EQ(s.T2, 1005u);
  EXPECT_EQ(s.sub_phase_length(), 335u);
  EXPECT_EQ(s.budget(), 11265u);
}

TEST(CascadeOfaParams, OracleCases) {
  auto s = cascade_ofa_params(2.0, 10000, 2, 4, 0.1);
  EXPECT_EQ(s.T1, 3688u);
  EXPECT_EQ(s.T2, 470u);
  s = cascade_ofa_params(1.5, 250000, 3, 10, 0.08);
  EXPECT_EQ(s.T1, 9720u);
  EXPECT_EQ(s.T2, 954u);
  EXPECT_EQ(cascade_ofa_params(1.5, 10000, 3, 10, 0.08).budget(), 7914u);
  EXPECT_EQ(cascade_ofa_params(1.5, 100000, 3, 10, 0.08).budget(), 9885u);
  EXPECT_EQ(cascade_ofa_params(1.5, 1000000, 3, 10, 0.08).budget(), 11856u);
}

TEST(CascadeOfaParams, Errors) {
  EXPECT_THROW(cascade_ofa_params(1.5, 10000, 2, 4, 0.5), ValidationError);
  EXPECT_THROW(cascade_ofa_params(1.5, 10000, 3, 10, 0.4), ValidationError);
  EXPECT_THROW(cascade_ofa_params(1.0, 10000, 3, 10, 0.08), ValidationError);
  EXPECT_THROW(cascade_ofa_params(1.5, 10000, 11, 10, 0.08), ValidationError);
  EXPECT_THROW(cascade_ofa_params(1.5, 10000, 3, 10, 0.0), ValidationError);
}

TEST(PbmOfaParams, ReferenceSettingsMatchOracle) {
  const auto s = pbm_ofa_params(1.5, 500000, 3, 10, kBias, 0.08);
  EXPECT_NEAR(s.lambda_p, 1.1176470588235294118, 1e-15);
  EXPECT_NEAR(s.eta, 0.774, 1e-15);
  EXPECT_NEAR(s.rho / 86.136749841653522776, 1.0, 1e-9);
  EXPECT_NEAR(s.gamma / 125.77752972924981194, 1.0, 1e-9);
  EXPECT_EQ(s.T1, 17728u);
  EXPECT_EQ(s.T2, 6876u);
}

TEST(PbmOfaParams, HorizonSweepMatchesOracle) {
  EXPECT_EQ(pbm_ofa_params(1.5, 10000, 3, 10, kBias, 0.08).budget(), 17273u);
  EXPECT_EQ(pbm_ofa_params(1.5, 100000, 3, 10, kBias, 0.08).budget(), 21588u);
  EXPECT_EQ(pbm_ofa_params(1.5, 1000000, 3, 10, kBias, 0.08).budget(), 25905u);
}

TEST(PbmOfaParams, Errors) {
  EXPECT_THROW(pbm_ofa_params(1.5, 10000, 3, 10, PositionBias({0.9, 0.8}), 0.08), ValidationError);
  // eta = p_K - p_1 w_m <= 0
  EXPECT_THROW(pbm_ofa_params(1.5, 10000, 3, 10, kBias, 0.9), ValidationError);
}

TEST(CascadeSubPhase, Boundaries) {
  const auto s = cascade_ofa_params(1.5, 500000, 3, 10, 0.08);
  EXPECT_EQ(cascade_sub_phase(s, s.T1 + 1), 1u);
  EXPECT_EQ(cascade_sub_phase(s, s.T1 + 335), 1u);
  EXPECT_EQ(cascade_sub_phase(s, s.T1 + 336), 2u);
  EXPECT_EQ(cascade_sub_phase(s, s.T1 + 670), 2u);
  EXPECT_EQ(cascade_sub_phase(s, s.T1 + 671), 3u);
  EXPECT_EQ(cascade_sub_phase(s, s.T1 + s.T2), 3u);
  EXPECT_THROW(cascade_sub_phase(s, s.T1), ValidationError);
  EXPECT_THROW(cascade_sub_phase(s, s.T1 + s.T2 + 1), ValidationError);
}

TEST(CascadeOfaTransform, Phases) {
  const auto s = cascade_ofa_params(1.5, 500000, 3, 10, 0.08);
  const auto targets = targets_4_7_10();

  auto fb = cascade_ofa_transform(s, targets, s.T1, RankedList{4, 7, 10});
  ASSERT_TRUE(fb);
  EXPECT_EQ(fb->exam, (std::vector<std::uint8_t>{1, 1, 1}));
  EXPECT_EQ(fb->click_count(), 0u);
  EXPECT_TRUE(fb->manipulated);

  // Sub-phase 1 promotes item 4: clicked where listed, later positions unexamined.
  fb = cascade_ofa_transform(s, targets, s.T1 + 1, RankedList{2, 4, 9});
  ASSERT_TRUE(fb);
  EXPECT_EQ(fb->exam, (std::vector<std::uint8_t>{1, 1, 0}));
  EXPECT_EQ(fb->clicks, (std::vector<std::uint8_t>{0, 1, 0}));

  // Sub-phase 3 promotes item 10; absent, so all examined and unclicked.
  fb = cascade_ofa_transform(s, targets, s.T1 + s.T2, RankedList{4, 7, 1});
  ASSERT_TRUE(fb);
  EXPECT_EQ(fb->exam, (std::vector<std::uint8_t>{1, 1, 1}));
  EXPECT_EQ(fb->click_count(), 0u);

  EXPECT_FALSE(cascade_ofa_transform(s, targets, s.T1 + s.T2 + 1, RankedList{4, 7, 10}));
}

TEST(CascadeAtqTransform, Examples) {
  const auto targets = targets_4_7_10();
  auto fb = cascade_atq_transform(100, targets, 5, RankedList{4, 1, 7});
  ASSERT_TRUE(fb);
  EXPECT_EQ(fb->clicks, (std::vector<std::uint8_t>{1, 0, 0}));
  EXPECT_EQ(fb->exam, (std::vector<std::uint8_t>{1, 0, 0}));

  fb = cascade_atq_transform(100, targets, 100, RankedList{1, 2, 3});
  ASSERT_TRUE(fb);
  EXPECT_EQ(fb->exam, (std::vector<std::uint8_t>{1, 1, 1}));
  EXPECT_EQ(fb->click_count(), 0u);

  EXPECT_FALSE(cascade_atq_transform(100, targets, 101, RankedList{4, 7, 10}));
}

TEST(PbmOfaTransform, PhaseOneRewardsNothing) {
  const auto s = pbm_ofa_params(1.5, 500000, 3, 10, kBias, 0.08);
  const auto targets = targets_4_7_10();
  RngStream rng(1);
  for (std::uint64_t t = 1; t <= s.T1; t += 97) {
    const auto fb = pbm_ofa_transform(s, targets, kBias, t, RankedList{4, 7, 10}, rng);
    ASSERT_TRUE(fb);
    ASSERT_EQ(fb->click_count(), 0u);
    ASSERT_TRUE(fb->manipulated);
  }
  EXPECT_FALSE(pbm_ofa_transform(s, targets, kBias, s.budget() + 1, RankedList{4, 7, 10}, rng));
}

TEST(PbmOfaTransform, PhaseTwoRewardsOnlyExaminedTargets) {
  const auto s = pbm_ofa_params(1.5, 500000, 3, 10, kBias, 0.08);
  const auto targets = targets_4_7_10();
  RngStream rng(2);
  const RankedList no_targets{1, 2, 3};
  for (int i = 0; i < 1000; ++i) {
    ASSERT_EQ(pbm_ofa_transform(s, targets, kBias, s.T1 + 1, no_targets, rng)->click_count(), 0u);
  }
  for (int i = 0; i < 1000; ++i) {
    const auto fb = pbm_ofa_transform(s, targets, kBias, s.T1 + 1, RankedList{4, 2, 3}, rng);
    ASSERT_EQ(fb->clicks[0], fb->exam[0]);
    ASSERT_EQ(fb->clicks[1] + fb->clicks[2], 0);
  }
}

TEST(PbmOfaTransform, PhaseTwoTargetRateIsFirstBias) {
  const auto s = pbm_ofa_params(1.5, 500000, 3, 10, kBias, 0.08);
  const auto targets = targets_4_7_10();
  RngStream rng(2025);
  constexpr int n = 1000000;
  int rewards = 0;
  for (int i = 0; i < n; ++i) rewards += pbm_ofa_transform(s, targets, kBias, s.T1 + 1, RankedList{7, 1, 2}, rng)->clicks[0];
  EXPECT_NEAR(static_cast<double>(rewards) / n, 0.95, 3 * std::sqrt(0.95 * 0.05 / n));
}

TEST(PbmAtqTransform, BudgetAndRewards) {
  const auto targets = targets_4_7_10();
  RngStream rng(3);
  const PositionBias certain({1.0, 1.0, 1.0});
  auto fb = pbm_atq_transform(12811, targets, certain, 12811, RankedList{4, 1, 10}, rng);
  ASSERT_TRUE(fb);
  EXPECT_EQ(fb->clicks, (std::vector<std::uint8_t>{1, 0, 1}));
  EXPECT_FALSE(pbm_atq_transform(12811, targets, certain, 12812, RankedList{4, 1, 10}, rng));
}

TEST(AttackPlan, DispatchAndBudget) {
  const auto s = cascade_ofa_params(1.5, 500000, 3, 10, 0.08);
  const auto plan = AttackPlan::cascade_ofa(s, targets_4_7_10());
  EXPECT_EQ(plan.kind(), AttackKind::CascadeOfa);
  EXPECT_EQ(plan.budget(), 11265u);
  EXPECT_NE(plan.cascade_schedule(), nullptr);
  EXPECT_EQ(plan.pbm_schedule(), nullptr);
  RngStream rng(0);
  EXPECT_TRUE(plan.apply(1, RankedList{1, 2, 3}, rng));
  EXPECT_FALSE(plan.apply(11266, RankedList{1, 2, 3}, rng));
  EXPECT_FALSE(AttackPlan().active());
  EXPECT_EQ(to_string(AttackKind::PbmAtq), "pbm-atq");
}
