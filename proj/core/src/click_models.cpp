#include "oltr/click_models.hpp"

#include <algorithm>
#include <string>
#include <vector>

namespace oltr {

std::string_view to_string(ClickModel model) noexcept {
  return model == ClickModel::Cascade ? "cascade" : "pbm";
}

const PositionBias& ClickModelKind::bias() const {
  if (model_ != ClickModel::Pbm) throw ValidationError("cascade model has no position bias");
  return bias_;
}

FeedbackRound cascade_simulate(const RankedList& list, const AttractionProfile& profile, RngStream& rng) {
  const std::size_t K = list.size();
  FeedbackRound round{std::vector<std::uint8_t>(K, 0), std::vector<std::uint8_t>(K, 0), false};
  for (std::size_t i = 0; i < K; ++i) {
    round.exam[i] = 1;
    if (rng.bernoulli(profile.w(list[i]))) {
      round.clicks[i] = 1;
      break;
    }
  }
  return round;
}

FeedbackRound pbm_simulate(const RankedList& list, const AttractionProfile& profile, const PositionBias& bias,
                           RngStream& rng) {
  const std::size_t K = list.size();
  if (bias.size() < K) throw ValidationError("position bias shorter than the ranked list");
  FeedbackRound round{std::vector<std::uint8_t>(K, 0), std::vector<std::uint8_t>(K, 0), false};
  for (std::size_t i = 0; i < K; ++i) round.exam[i] = rng.bernoulli(bias[i]) ? 1 : 0;
  for (std::size_t i = 0; i < K; ++i) {
    const bool attracted = rng.bernoulli(profile.w(list[i]));
    round.clicks[i] = (round.exam[i] && attracted) ? 1 : 0;
  }
  return round;
}

FeedbackRound simulate(const ClickModelKind& kind, const RankedList& list, const AttractionProfile& profile,
                       RngStream& rng) {
  return kind.is_cascade() ? cascade_simulate(list, profile, rng) : pbm_simulate(list, profile, kind.bias(), rng);
}

FeedbackRound cascade_synthesize(const RankedList& list, std::optional<std::size_t> clicked_position) {
  const std::size_t K = list.size();
  FeedbackRound round{std::vector<std::uint8_t>(K, 1), std::vector<std::uint8_t>(K, 0), true};
  if (clicked_position) {
    const std::size_t j = *clicked_position;
    if (j == 0 || j > K) {
      throw ValidationError("clicked position " + std::to_string(j) + " outside 1.." + std::to_string(K));
    }
    round.clicks[j - 1] = 1;
    for (std::size_t i = j; i < K; ++i) round.exam[i] = 0;
  }
  return round;
}

double expected_reward(const ClickModelKind& kind, const RankedList& list, const AttractionProfile& profile) {
  if (kind.is_cascade()) {
    // Order-free in exact arithmetic; multiply in id order so permutations
    // of a list agree bit for bit.
    std::vector<ItemId> ids(list.begin(), list.end());
    std::sort(ids.begin(), ids.end());
    double miss = 1.0;
    for (auto id : ids) miss *= 1.0 - profile.w(id);
    return 1.0 - miss;
  }
  const auto& bias = kind.bias();
  if (bias.size() < list.size()) throw ValidationError("position bias shorter than the ranked list");
  double total = 0.0;
  for (std::size_t i = 0; i < list.size(); ++i) total += bias[i] * profile.w(list[i]);
  return total;
}

double per_round_regret(const ClickModelKind& kind, const RankedList& list, const AttractionProfile& profile) {
  if (list.empty()) return 0.0;
  const auto best = optimal_list(profile, list.size());
  if (best == list) return 0.0;
  return expected_reward(kind, best, profile) - expected_reward(kind, list, profile);
}

}  // namespace oltr
