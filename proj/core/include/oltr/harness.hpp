#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string_view>
#include <vector>

#include "oltr/attacks.hpp"
#include "oltr/click_models.hpp"
#include "oltr/profile.hpp"
#include "oltr/rankers.hpp"

namespace oltr {

enum class RankerKind { CascadeUcb1, PbmUcb };

std::string_view to_string(RankerKind kind) noexcept;

/// RNG channels of a run. Environment and adversary draw from disjoint
/// streams so attack-phase draws never shift the user's trajectory.
inline constexpr std::uint32_t kEnvironmentChannel = 0;
inline constexpr std::uint32_t kAdversaryChannel = 1;

struct ExperimentConfig {
  ClickModelKind model = ClickModelKind::cascade();
  RankerKind ranker = RankerKind::CascadeUcb1;
  AttackKind attack = AttackKind::None;
  AttractionProfile profile;
  std::size_t K = 3;
  std::uint64_t T = 500000;
  double alpha = 1.5;
  /// Target set S, in Λ order. Required for every attack.
  std::vector<ItemId> targets;
  /// Attack parameter; cascade attacks may give `epsilon` instead.
  std::optional<double> w_m;
  /// w_m = (1 - epsilon) min(1/K, min_{a in Λ} w_a). Cascade attacks only.
  std::optional<double> epsilon;
  /// ATQ budget C; defaults to the matched OFA budget T1 + T2.
  std::optional<std::uint64_t> atq_budget;
  std::size_t runs = 1;
  std::uint64_t master_seed = 0;
  /// Approximate number of points on the geometric regret grid.
  std::size_t curve_points = 200;
};

/// Throws ValidationError on incompatible or out-of-range settings.
void validate_config(const ExperimentConfig& config);

/// Validates the config and computes the attack schedule it implies.
AttackPlan resolve_attack(const ExperimentConfig& config);

/// Attack parameter w_m implied by the config (explicit or epsilon-derived).
double resolve_wm(const ExperimentConfig& config);

/// Geometric round grid on [1, T], strictly increasing, always ending at T.
std::vector<std::uint64_t> regret_grid(std::uint64_t T, std::size_t points);

struct RunResult {
  std::size_t run_index = 0;
  std::uint64_t seed = 0;
  std::vector<std::uint64_t> curve_rounds;
  /// Cumulative expected regret at each grid round.
  std::vector<double> regret_curve;
  double final_regret = 0;
  /// Recommendations per item over the whole horizon (item i at index i-1).
  std::vector<std::uint64_t> rec_counts;
  std::uint64_t manipulated_rounds = 0;
  /// Fraction of rounds in which every item of S was listed.
  double target_coverage = 0;
  /// Smallest per-target recommendation rate over S.
  double min_target_rate = 0;
  /// Every round after the attack budget listed a permutation of Λ.
  bool locked_after_attack = false;
};

/// Promotion success: every target listed in at least 95% of rounds.
inline constexpr double kPromotionRate = 0.95;
bool promotion_succeeded(const RunResult& run) noexcept;

struct RoundEvent {
  std::uint64_t t;
  const RankedList& list;
  const FeedbackRound& feedback;
  double regret;
  double cumulative_regret;
};

/// Hooks into the round loop. before_round sees the ranker at the start of
/// round t, i.e. with counters accumulated through t-1.
class RoundObserver {
 public:
  virtual ~RoundObserver() = default;
  virtual void before_round(std::uint64_t /*t*/, const Ranker& /*ranker*/) {}
  virtual void after_round(const RoundEvent& /*event*/, const Ranker& /*ranker*/) {}
};

std::unique_ptr<Ranker> make_ranker(const ExperimentConfig& config);

/// Plays T rounds: recommend, attack transform (or true user feedback once
/// the attack passes through), ranker update. Regret is the expected gap
/// against the true profile, whether or not the round was manipulated.
RunResult run_once(const ExperimentConfig& config, std::uint64_t seed, RoundObserver* observer = nullptr);

struct Summary {
  std::vector<RunResult> runs;
  std::vector<std::uint64_t> curve_rounds;
  std::vector<double> mean_curve;
  std::vector<double> std_curve;
  double mean_final_regret = 0;
  double std_final_regret = 0;
  std::vector<double> mean_rec_counts;
  std::size_t success_runs = 0;
};

/// Folds runs in index order. Standard deviations use n - 1 (0 for one run).
Summary aggregate(std::vector<RunResult> runs);

using ObserverFactory = std::function<std::unique_ptr<RoundObserver>(std::size_t run_index)>;

/// Runs config.runs replications with seeds RngStream::run_seed(master, i).
/// `workers` = 0 uses the available hardware parallelism; the output does not
/// depend on it.
Summary run_many(const ExperimentConfig& config, unsigned workers = 0, const ObserverFactory& observers = {});

}  // namespace oltr
