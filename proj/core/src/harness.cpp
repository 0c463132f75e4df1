#include "oltr/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <string>
#include <thread>

namespace oltr {
namespace {

bool is_cascade_attack(AttackKind kind) {
  return kind == AttackKind::CascadeOfa || kind == AttackKind::CascadeAtq;
}

bool is_ofa(AttackKind kind) { return kind == AttackKind::CascadeOfa || kind == AttackKind::PbmOfa; }

std::uint64_t matched_ofa_budget(const ExperimentConfig& config, double w_m) {
  const std::size_t L = config.profile.size();
  if (config.model.is_cascade()) return cascade_ofa_params(config.alpha, config.T, config.K, L, w_m).budget();
  return pbm_ofa_params(config.alpha, config.T, config.K, L, config.model.bias(), w_m).budget();
}

}  // namespace

std::string_view to_string(RankerKind kind) noexcept {
  return kind == RankerKind::CascadeUcb1 ? "cascade-ucb1" : "pbm-ucb";
}

void validate_config(const ExperimentConfig& config) {
  validate_profile(config.profile, config.K);
  if (config.T == 0) throw ValidationError("horizon T must be positive");
  if (!(config.alpha > 1.0)) throw ValidationError("alpha must exceed 1");
  if (config.runs == 0) throw ValidationError("runs must be at least 1");
  if (!config.model.is_cascade() && config.model.bias().size() != config.K) {
    throw ValidationError("position bias length must equal K");
  }
  const bool cascade_ranker = config.ranker == RankerKind::CascadeUcb1;
  if (cascade_ranker != config.model.is_cascade()) {
    throw ValidationError(std::string("ranker ") + std::string(to_string(config.ranker)) +
                          " does not match the " + std::string(to_string(config.model.model())) + " click model");
  }
  if (config.attack == AttackKind::None) return;
  if (is_cascade_attack(config.attack) != config.model.is_cascade()) {
    throw ValidationError(std::string("attack ") + std::string(to_string(config.attack)) +
                          " is incompatible with the " + std::string(to_string(config.model.model())) +
                          " click model");
  }
  if (config.targets.empty()) {
    throw ValidationError(std::string("attack ") + std::string(to_string(config.attack)) + " requires targets");
  }
  TargetSpec::make(config.targets, config.K, config.profile.size());
}

double resolve_wm(const ExperimentConfig& config) {
  if (config.w_m) return *config.w_m;
  if (config.epsilon) {
    if (!config.model.is_cascade()) throw ValidationError("epsilon-derived w_m is only defined for cascade attacks");
    const auto targets = TargetSpec::make(config.targets, config.K, config.profile.size());
    double w_min = 1.0;
    for (auto id : targets.target_list) w_min = std::min(w_min, config.profile.w(id));
    return derive_wm_cascade(w_min, config.K, *config.epsilon);
  }
  throw ValidationError("attack requires w_m (or epsilon for cascade attacks)");
}

AttackPlan resolve_attack(const ExperimentConfig& config) {
  validate_config(config);
  if (config.attack == AttackKind::None) return AttackPlan{};

  const std::size_t L = config.profile.size();
  auto targets = TargetSpec::make(config.targets, config.K, L);
  AttackPlan plan;
  switch (config.attack) {
    case AttackKind::CascadeOfa:
      plan = AttackPlan::cascade_ofa(cascade_ofa_params(config.alpha, config.T, config.K, L, resolve_wm(config)),
                                     std::move(targets));
      break;
    case AttackKind::PbmOfa:
      plan = AttackPlan::pbm_ofa(
          pbm_ofa_params(config.alpha, config.T, config.K, L, config.model.bias(), resolve_wm(config)),
          std::move(targets), config.model.bias());
      break;
    case AttackKind::CascadeAtq:
    case AttackKind::PbmAtq: {
      const std::uint64_t budget = config.atq_budget ? *config.atq_budget : matched_ofa_budget(config, resolve_wm(config));
      plan = config.attack == AttackKind::CascadeAtq
                 ? AttackPlan::cascade_atq(budget, std::move(targets))
                 : AttackPlan::pbm_atq(budget, std::move(targets), config.model.bias());
      break;
    }
    case AttackKind::None: break;
  }

  if (is_ofa(config.attack) && config.T <= plan.budget()) {
    throw ValidationError("horizon T=" + std::to_string(config.T) + " does not exceed the attack budget T1+T2=" +
                          std::to_string(plan.budget()));
  }
  if (!is_ofa(config.attack) && plan.budget() > config.T) {
    throw ValidationError("ATQ budget " + std::to_string(plan.budget()) + " exceeds the horizon");
  }
  return plan;
}

std::vector<std::uint64_t> regret_grid(std::uint64_t T, std::size_t points) {
  std::vector<std::uint64_t> grid;
  if (T == 0) return grid;
  points = std::max<std::size_t>(points, 2);
  const double log_T = std::log(static_cast<double>(T));
  for (std::size_t i = 0; i < points; ++i) {
    const double x = std::exp(log_T * static_cast<double>(i) / static_cast<double>(points - 1));
    auto r = static_cast<std::uint64_t>(std::llround(x));
    r = std::clamp<std::uint64_t>(r, 1, T);
    if (grid.empty() || r > grid.back()) grid.push_back(r);
  }
  if (grid.back() != T) grid.push_back(T);
  return grid;
}

bool promotion_succeeded(const RunResult& run) noexcept { return run.min_target_rate >= kPromotionRate; }

std::unique_ptr<Ranker> make_ranker(const ExperimentConfig& config) {
  if (config.ranker == RankerKind::CascadeUcb1) {
    return std::make_unique<CascadeUcb1>(config.profile.size(), config.K, config.alpha);
  }
  return std::make_unique<PbmUcb>(config.profile.size(), config.model.bias(), config.alpha);
}

RunResult run_once(const ExperimentConfig& config, std::uint64_t seed, RoundObserver* observer) {
  const AttackPlan plan = resolve_attack(config);
  auto ranker = make_ranker(config);
  const std::size_t L = config.profile.size();

  RngStream env = RngStream::for_channel(seed, kEnvironmentChannel);
  RngStream adversary = RngStream::for_channel(seed, kAdversaryChannel);

  const RankedList best = optimal_list(config.profile, config.K);
  const double best_reward = expected_reward(config.model, best, config.profile);

  RunResult result;
  result.seed = seed;
  result.curve_rounds = regret_grid(config.T, config.curve_points);
  result.regret_curve.reserve(result.curve_rounds.size());
  result.rec_counts.assign(L, 0);

  const TargetSpec* targets = plan.targets();
  std::uint64_t covered_rounds = 0;
  bool locked = targets != nullptr;
  const std::uint64_t budget = plan.budget();

  double cumulative = 0.0;
  std::size_t next_grid = 0;
  for (std::uint64_t t = 1; t <= config.T; ++t) {
    if (observer) observer->before_round(t, *ranker);
    const RankedList list = ranker->recommend();

    std::optional<FeedbackRound> feedback = plan.apply(t, list, adversary);
    if (feedback) {
      ++result.manipulated_rounds;
    } else {
      feedback = simulate(config.model, list, config.profile, env);
    }

    const double regret = list == best ? 0.0 : best_reward - expected_reward(config.model, list, config.profile);
    cumulative += regret;

    for (auto id : list) ++result.rec_counts[index_of(id)];
    if (targets) {
      const bool all_listed = std::all_of(targets->target_set.begin(), targets->target_set.end(),
                                          [&](ItemId id) { return list.contains(id); });
      if (all_listed) ++covered_rounds;
      if (t > budget && locked && !list.is_permutation_of(targets->target_list)) locked = false;
    }

    ranker->update(list, *feedback);
    if (observer) observer->after_round(RoundEvent{t, list, *feedback, regret, cumulative}, *ranker);

    if (next_grid < result.curve_rounds.size() && result.curve_rounds[next_grid] == t) {
      result.regret_curve.push_back(cumulative);
      ++next_grid;
    }
  }

  result.final_regret = cumulative;
  if (targets) {
    const double T = static_cast<double>(config.T);
    result.target_coverage = static_cast<double>(covered_rounds) / T;
    double min_rate = 1.0;
    for (auto id : targets->target_set) {
      min_rate = std::min(min_rate, static_cast<double>(result.rec_counts[index_of(id)]) / T);
    }
    result.min_target_rate = min_rate;
    result.locked_after_attack = locked;
  }
  return result;
}

Summary aggregate(std::vector<RunResult> runs) {
  Summary s;
  s.runs = std::move(runs);
  if (s.runs.empty()) return s;
  const double n = static_cast<double>(s.runs.size());
  s.curve_rounds = s.runs.front().curve_rounds;
  const std::size_t points = s.curve_rounds.size();
  const std::size_t L = s.runs.front().rec_counts.size();

  s.mean_curve.assign(points, 0.0);
  s.std_curve.assign(points, 0.0);
  s.mean_rec_counts.assign(L, 0.0);
  for (const auto& run : s.runs) {
    if (run.curve_rounds != s.curve_rounds || run.rec_counts.size() != L) {
      throw ValidationError("runs disagree on the regret grid or item universe");
    }
    s.mean_final_regret += run.final_regret;
    for (std::size_t g = 0; g < points; ++g) s.mean_curve[g] += run.regret_curve[g];
    for (std::size_t a = 0; a < L; ++a) s.mean_rec_counts[a] += static_cast<double>(run.rec_counts[a]);
    if (promotion_succeeded(run)) ++s.success_runs;
  }
  s.mean_final_regret /= n;
  for (auto& v : s.mean_curve) v /= n;
  for (auto& v : s.mean_rec_counts) v /= n;

  if (s.runs.size() > 1) {
    double ss = 0.0;
    std::vector<double> ss_curve(points, 0.0);
    for (const auto& run : s.runs) {
      ss += (run.final_regret - s.mean_final_regret) * (run.final_regret - s.mean_final_regret);
      for (std::size_t g = 0; g < points; ++g) {
        const double d = run.regret_curve[g] - s.mean_curve[g];
        ss_curve[g] += d * d;
      }
    }
    s.std_final_regret = std::sqrt(ss / (n - 1.0));
    for (std::size_t g = 0; g < points; ++g) s.std_curve[g] = std::sqrt(ss_curve[g] / (n - 1.0));
  }
  return s;
}

Summary run_many(const ExperimentConfig& config, unsigned workers, const ObserverFactory& observers) {
  resolve_attack(config);
  const std::size_t runs = config.runs;
  std::vector<RunResult> results(runs);

  auto run_index = [&](std::size_t i) {
    std::unique_ptr<RoundObserver> observer = observers ? observers(i) : nullptr;
    results[i] = run_once(config, RngStream::run_seed(config.master_seed, i), observer.get());
    results[i].run_index = i;
  };

  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, runs));

  if (workers <= 1) {
    for (std::size_t i = 0; i < runs; ++i) run_index(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < runs; i = next++) {
          try {
            run_index(i);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
          }
        }
      });
    }
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
  }
  return aggregate(std::move(results));
}

}  // namespace oltr
