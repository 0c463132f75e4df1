#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "oltr/rng.hpp"
#include "oltr/types.hpp"

namespace oltr {

/// Items promoted by the adversary. `target_list` (Λ) holds every item of
/// `target_set` (S) in the given order, padded to length K with the
/// smallest-index items outside S.
struct TargetSpec {
  std::vector<ItemId> target_set;
  RankedList target_list;

  static TargetSpec make(std::span<const ItemId> targets, std::size_t K, std::size_t L);

  bool in_target_list(ItemId id) const noexcept { return target_list.contains(id); }
};

/// (1 - epsilon) * min(1/K, w_min).
double derive_wm_cascade(double w_min_bound, std::size_t K, double epsilon);

struct CascadeOfaSchedule {
  double w_m = 0;
  std::uint64_t T1 = 0;  // zero-reward phase
  std::uint64_t T2 = 0;  // targeted phase, a multiple of K
  std::size_t K = 0;

  std::uint64_t sub_phase_length() const noexcept { return T2 / K; }
  std::uint64_t budget() const noexcept { return T1 + T2; }
};

/// T1 = L * ceil(alpha ln T / (K w_m^2))
/// T2 = K * ceil((w_m K T1 / L + L - K + 1) / (1 - K w_m))
CascadeOfaSchedule cascade_ofa_params(double alpha, std::uint64_t T, std::size_t K, std::size_t L, double w_m);

struct PbmOfaSchedule {
  double w_m = 0;
  double lambda_p = 0;
  double eta = 0;
  double rho = 0;
  double gamma = 0;
  std::uint64_t T1 = 0;
  std::uint64_t T2 = 0;

  std::uint64_t budget() const noexcept { return T1 + T2; }
};

/// Phase lengths for the position-based attack, evaluated in dependency
/// order lambda_p, T1, rho, eta, gamma, T2:
///
///   T1    = ceil((L/K) (lambda_p^2 alpha ln T / (w_m^2 p_K^2) + 1))
///   rho   = p_1 w_m (K T1 / ln T - (L-1) alpha / (w_m^2 p_K^2))
///   eta   = p_K - p_1 w_m
///   gamma = (2 rho eta + 1 + sqrt(4 rho eta + 1)) / (2 eta^2)
///   T2    = ceil(L (lambda_p^2 gamma ln T + 1) / K)
PbmOfaSchedule pbm_ofa_params(double alpha, std::uint64_t T, std::size_t K, std::size_t L, const PositionBias& bias,
                              double w_m);

/// 1-based targeted sub-phase ceil(K (t - T1) / T2) for T1 < t <= T1 + T2.
std::size_t cascade_sub_phase(const CascadeOfaSchedule& schedule, std::uint64_t t);

// Transforms return the adversary's feedback for round t, or nullopt once the
// attack has ended and the true feedback passes through.

std::optional<FeedbackRound> cascade_ofa_transform(const CascadeOfaSchedule& schedule, const TargetSpec& targets,
                                                   std::uint64_t t, const RankedList& list);

/// Draws a fresh adversarial examination vector every attack round.
std::optional<FeedbackRound> pbm_ofa_transform(const PbmOfaSchedule& schedule, const TargetSpec& targets,
                                               const PositionBias& bias, std::uint64_t t, const RankedList& list,
                                               RngStream& rng);

/// Clicks the top-most listed target for t <= budget.
std::optional<FeedbackRound> cascade_atq_transform(std::uint64_t budget, const TargetSpec& targets, std::uint64_t t,
                                                   const RankedList& list);

/// Clicks every listed target whose position is examined, for t <= budget.
std::optional<FeedbackRound> pbm_atq_transform(std::uint64_t budget, const TargetSpec& targets,
                                               const PositionBias& bias, std::uint64_t t, const RankedList& list,
                                               RngStream& rng);

enum class AttackKind { None, CascadeOfa, PbmOfa, CascadeAtq, PbmAtq };

std::string_view to_string(AttackKind kind) noexcept;

/// A resolved attack: strategy, targets and schedule bundled for the round loop.
class AttackPlan {
 public:
  AttackPlan() = default;
  static AttackPlan cascade_ofa(CascadeOfaSchedule schedule, TargetSpec targets);
  static AttackPlan pbm_ofa(PbmOfaSchedule schedule, TargetSpec targets, PositionBias bias);
  static AttackPlan cascade_atq(std::uint64_t budget, TargetSpec targets);
  static AttackPlan pbm_atq(std::uint64_t budget, TargetSpec targets, PositionBias bias);

  AttackKind kind() const noexcept { return kind_; }
  bool active() const noexcept { return kind_ != AttackKind::None; }
  /// Number of rounds whose feedback is replaced.
  std::uint64_t budget() const noexcept;
  const TargetSpec* targets() const noexcept { return targets_ ? &*targets_ : nullptr; }
  const CascadeOfaSchedule* cascade_schedule() const noexcept { return std::get_if<CascadeOfaSchedule>(&schedule_); }
  const PbmOfaSchedule* pbm_schedule() const noexcept { return std::get_if<PbmOfaSchedule>(&schedule_); }

  std::optional<FeedbackRound> apply(std::uint64_t t, const RankedList& list, RngStream& adversary_rng) const;

 private:
  AttackKind kind_ = AttackKind::None;
  std::variant<std::monostate, CascadeOfaSchedule, PbmOfaSchedule, std::uint64_t> schedule_;
  std::optional<TargetSpec> targets_;
  std::optional<PositionBias> bias_;
};

}  // namespace oltr
