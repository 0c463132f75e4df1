#pragma once

#include <cstddef>
#include <optional>
#include <string_view>

#include "oltr/profile.hpp"
#include "oltr/rng.hpp"
#include "oltr/types.hpp"

namespace oltr {

enum class ClickModel { Cascade, Pbm };

std::string_view to_string(ClickModel model) noexcept;

/// Click model tag. The position-based variant carries its bias vector.
class ClickModelKind {
 public:
  static ClickModelKind cascade() { return ClickModelKind(ClickModel::Cascade, {}); }
  static ClickModelKind pbm(PositionBias bias) { return ClickModelKind(ClickModel::Pbm, std::move(bias)); }

  ClickModel model() const noexcept { return model_; }
  bool is_cascade() const noexcept { return model_ == ClickModel::Cascade; }
  /// Throws ValidationError for the cascade variant.
  const PositionBias& bias() const;

 private:
  ClickModelKind(ClickModel model, PositionBias bias) : model_(model), bias_(std::move(bias)) {}

  ClickModel model_;
  PositionBias bias_;
};

/// Cascade user: scans top-down, clicks the first attractive item and stops.
/// Draws one Bernoulli(w) per examined position, so RNG use varies per round.
FeedbackRound cascade_simulate(const RankedList& list, const AttractionProfile& profile, RngStream& rng);

/// Position-based user: exam[i] ~ Bernoulli(p_i), click = exam * Bernoulli(w).
/// Always consumes exactly 2K draws: K examinations then K attractions.
FeedbackRound pbm_simulate(const RankedList& list, const AttractionProfile& profile, const PositionBias& bias,
                           RngStream& rng);

FeedbackRound simulate(const ClickModelKind& kind, const RankedList& list, const AttractionProfile& profile,
                       RngStream& rng);

/// Cascade-consistent feedback for an adversary-chosen outcome. With a click
/// at position j, positions 1..j are examined and only j is clicked; without
/// one every position is examined and nothing is clicked.
FeedbackRound cascade_synthesize(const RankedList& list, std::optional<std::size_t> clicked_position);

/// f(L, w): expected clicks. Cascade 1 - prod(1 - w_a); PBM sum_i p_i w_{a_i}.
double expected_reward(const ClickModelKind& kind, const RankedList& list, const AttractionProfile& profile);

/// f(L*, w) - f(L, w).
double per_round_regret(const ClickModelKind& kind, const RankedList& list, const AttractionProfile& profile);

}  // namespace oltr
