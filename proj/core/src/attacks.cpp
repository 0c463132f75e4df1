#include "oltr/attacks.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "oltr/click_models.hpp"

namespace oltr {
namespace {

void check_common(double alpha, std::uint64_t T, std::size_t K, std::size_t L) {
  if (!(alpha > 1.0)) throw ValidationError("alpha must exceed 1");
  if (T < 3) throw ValidationError("horizon T must be at least 3");
  if (K == 0) throw ValidationError("K must be at least 1");
  if (K > L) throw ValidationError("K exceeds L");
}

std::uint64_t ceil_to_u64(double x) {
  if (!(x >= 0.0) || !std::isfinite(x)) throw ValidationError("phase length is not a finite nonnegative value");
  return static_cast<std::uint64_t>(std::ceil(x));
}

FeedbackRound pbm_adversary_round(const TargetSpec& targets, const PositionBias& bias, const RankedList& list,
                                  bool reward_targets, RngStream& rng) {
  const std::size_t K = list.size();
  if (bias.size() < K) throw ValidationError("position bias shorter than the ranked list");
  FeedbackRound round{std::vector<std::uint8_t>(K, 0), std::vector<std::uint8_t>(K, 0), true};
  for (std::size_t i = 0; i < K; ++i) {
    round.exam[i] = rng.bernoulli(bias[i]) ? 1 : 0;
    if (reward_targets && round.exam[i] && targets.in_target_list(list[i])) round.clicks[i] = 1;
  }
  return round;
}

}  // namespace

TargetSpec TargetSpec::make(std::span<const ItemId> targets, std::size_t K, std::size_t L) {
  if (targets.empty()) throw ValidationError("target set is empty");
  if (targets.size() > K) {
    throw ValidationError("target set has " + std::to_string(targets.size()) + " items, more than K=" +
                          std::to_string(K));
  }
  std::vector<ItemId> padded(targets.begin(), targets.end());
  for (std::size_t i = 0; i < L && padded.size() < K; ++i) {
    const ItemId candidate = item_at_index(i);
    if (std::find(targets.begin(), targets.end(), candidate) == targets.end()) padded.push_back(candidate);
  }
  TargetSpec spec{std::vector<ItemId>(targets.begin(), targets.end()), RankedList(std::move(padded))};
  validate_list(spec.target_list, K, L);
  return spec;
}

double derive_wm_cascade(double w_min_bound, std::size_t K, double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw ValidationError("epsilon must lie in (0,1)");
  if (!(w_min_bound > 0.0 && w_min_bound <= 1.0)) throw ValidationError("w_min must lie in (0,1]");
  if (K == 0) throw ValidationError("K must be at least 1");
  return (1.0 - epsilon) * std::min(1.0 / static_cast<double>(K), w_min_bound);
}

CascadeOfaSchedule cascade_ofa_params(double alpha, std::uint64_t T, std::size_t K, std::size_t L, double w_m) {
  check_common(alpha, T, K, L);
  if (!(w_m > 0.0)) throw ValidationError("w_m must be positive");
  const double k = static_cast<double>(K);
  const double l = static_cast<double>(L);
  const double denominator = 1.0 - k * w_m;
  if (!(denominator > 0.0)) {
    throw ValidationError("w_m must be below 1/K: T2 denominator 1 - K*w_m = " + std::to_string(denominator) +
                          " is not positive");
  }
  CascadeOfaSchedule s;
  s.w_m = w_m;
  s.K = K;
  const double log_T = std::log(static_cast<double>(T));
  s.T1 = L * ceil_to_u64(alpha * log_T / (k * w_m * w_m));
  s.T2 = K * ceil_to_u64((w_m * k * static_cast<double>(s.T1) / l + l - k + 1.0) / denominator);
  return s;
}

PbmOfaSchedule pbm_ofa_params(double alpha, std::uint64_t T, std::size_t K, std::size_t L, const PositionBias& bias,
                              double w_m) {
  check_common(alpha, T, K, L);
  if (bias.size() != K) throw ValidationError("position bias length must equal K");
  if (!(w_m > 0.0)) throw ValidationError("w_m must be positive");
  const double k = static_cast<double>(K);
  const double l = static_cast<double>(L);
  const double p1 = bias.first();
  const double pK = bias.last();
  const double log_T = std::log(static_cast<double>(T));

  PbmOfaSchedule s;
  s.w_m = w_m;
  s.lambda_p = p1 / pK;
  s.eta = pK - p1 * w_m;
  if (!(s.eta > 0.0)) {
    throw ValidationError("w_m must be below 1/lambda_p: eta = p_K - p_1*w_m = " + std::to_string(s.eta) +
                          " is not positive");
  }
  const double lambda_sq = s.lambda_p * s.lambda_p;
  const double wm_pk_sq = w_m * w_m * pK * pK;
  s.T1 = ceil_to_u64((l / k) * (lambda_sq * alpha * log_T / wm_pk_sq + 1.0));
  s.rho = p1 * w_m * (k * static_cast<double>(s.T1) / log_T - (l - 1.0) * alpha / wm_pk_sq);
  const double disc = 4.0 * s.rho * s.eta + 1.0;
  if (disc < 0.0) throw ValidationError("4*rho*eta + 1 is negative; gamma is undefined");
  s.gamma = (2.0 * s.rho * s.eta + 1.0 + std::sqrt(disc)) / (2.0 * s.eta * s.eta);
  s.T2 = ceil_to_u64(l * (lambda_sq * s.gamma * log_T + 1.0) / k);
  return s;
}

std::size_t cascade_sub_phase(const CascadeOfaSchedule& schedule, std::uint64_t t) {
  if (t <= schedule.T1 || t > schedule.T1 + schedule.T2) throw ValidationError("round is outside phase 2");
  const std::uint64_t offset = t - schedule.T1;
  return static_cast<std::size_t>((schedule.K * offset + schedule.T2 - 1) / schedule.T2);
}

std::optional<FeedbackRound> cascade_ofa_transform(const CascadeOfaSchedule& schedule, const TargetSpec& targets,
                                                   std::uint64_t t, const RankedList& list) {
  if (t <= schedule.T1) return cascade_synthesize(list, std::nullopt);
  if (t > schedule.T1 + schedule.T2) return std::nullopt;
  const ItemId promoted = targets.target_list.at_position(cascade_sub_phase(schedule, t));
  return cascade_synthesize(list, list.position_of(promoted));
}

std::optional<FeedbackRound> pbm_ofa_transform(const PbmOfaSchedule& schedule, const TargetSpec& targets,
                                               const PositionBias& bias, std::uint64_t t, const RankedList& list,
                                               RngStream& rng) {
  if (t > schedule.T1 + schedule.T2) return std::nullopt;
  return pbm_adversary_round(targets, bias, list, t > schedule.T1, rng);
}

std::optional<FeedbackRound> cascade_atq_transform(std::uint64_t budget, const TargetSpec& targets, std::uint64_t t,
                                                   const RankedList& list) {
  if (t > budget) return std::nullopt;
  for (std::size_t i = 0; i < list.size(); ++i) {
    if (targets.in_target_list(list[i])) return cascade_synthesize(list, i + 1);
  }
  return cascade_synthesize(list, std::nullopt);
}

std::optional<FeedbackRound> pbm_atq_transform(std::uint64_t budget, const TargetSpec& targets,
                                               const PositionBias& bias, std::uint64_t t, const RankedList& list,
                                               RngStream& rng) {
  if (t > budget) return std::nullopt;
  return pbm_adversary_round(targets, bias, list, true, rng);
}

std::string_view to_string(AttackKind kind) noexcept {
  switch (kind) {
    case AttackKind::None: return "none";
    case AttackKind::CascadeOfa: return "cascade-ofa";
    case AttackKind::PbmOfa: return "pbm-ofa";
    case AttackKind::CascadeAtq: return "cascade-atq";
    case AttackKind::PbmAtq: return "pbm-atq";
  }
  return "unknown";
}

AttackPlan AttackPlan::cascade_ofa(CascadeOfaSchedule schedule, TargetSpec targets) {
  AttackPlan plan;
  plan.kind_ = AttackKind::CascadeOfa;
  plan.schedule_ = schedule;
  plan.targets_ = std::move(targets);
  return plan;
}

AttackPlan AttackPlan::pbm_ofa(PbmOfaSchedule schedule, TargetSpec targets, PositionBias bias) {
  AttackPlan plan;
  plan.kind_ = AttackKind::PbmOfa;
  plan.schedule_ = schedule;
  plan.targets_ = std::move(targets);
  plan.bias_ = std::move(bias);
  return plan;
}

AttackPlan AttackPlan::cascade_atq(std::uint64_t budget, TargetSpec targets) {
  AttackPlan plan;
  plan.kind_ = AttackKind::CascadeAtq;
  plan.schedule_ = budget;
  plan.targets_ = std::move(targets);
  return plan;
}

AttackPlan AttackPlan::pbm_atq(std::uint64_t budget, TargetSpec targets, PositionBias bias) {
  AttackPlan plan;
  plan.kind_ = AttackKind::PbmAtq;
  plan.schedule_ = budget;
  plan.targets_ = std::move(targets);
  plan.bias_ = std::move(bias);
  return plan;
}

std::uint64_t AttackPlan::budget() const noexcept {
  if (auto* c = std::get_if<CascadeOfaSchedule>(&schedule_)) return c->budget();
  if (auto* p = std::get_if<PbmOfaSchedule>(&schedule_)) return p->budget();
  if (auto* b = std::get_if<std::uint64_t>(&schedule_)) return *b;
  return 0;
}

std::optional<FeedbackRound> AttackPlan::apply(std::uint64_t t, const RankedList& list,
                                               RngStream& adversary_rng) const {
  switch (kind_) {
    case AttackKind::None: return std::nullopt;
    case AttackKind::CascadeOfa: return cascade_ofa_transform(*cascade_schedule(), *targets_, t, list);
    case AttackKind::PbmOfa: return pbm_ofa_transform(*pbm_schedule(), *targets_, *bias_, t, list, adversary_rng);
    case AttackKind::CascadeAtq: return cascade_atq_transform(budget(), *targets_, t, list);
    case AttackKind::PbmAtq: return pbm_atq_transform(budget(), *targets_, *bias_, t, list, adversary_rng);
  }
  return std::nullopt;
}

}  // namespace oltr
