#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <string_view>
#include <vector>

#include "oltr/types.hpp"

namespace oltr {

/// UCB of an item that has never been placed in a list under PBM-UCB.
inline constexpr double kUnexploredUcb = std::numeric_limits<double>::infinity();

/// CascadeUCB1 index: w_hat + sqrt(alpha ln t / N). Natural logarithm.
double ucb_cascade(double w_hat, std::uint64_t N, std::uint64_t t, double alpha);

/// PBM-UCB index: S / N_tilde + sqrt(alpha n ln t / N_tilde^2), or
/// kUnexploredUcb when N_tilde = 0.
double ucb_pbm(std::uint64_t S, std::uint64_t n, double N_tilde, std::uint64_t t, double alpha);

/// Per-item counters, as exposed to state dumps and threshold checks.
struct ItemState {
  ItemId item{};
  std::uint64_t count = 0;    // N_a (cascade) or n_a (PBM), including the initial pseudo-count
  std::uint64_t clicks = 0;   // total rewards observed
  double exam_estimate = 0;   // N_tilde_a (PBM only)
  double mean = 0;            // w_hat_a (cascade) or S_a / N_tilde_a (PBM)
  double ucb = 0;             // U_a at the ranker's current round
};

/// Common interface: recommend at round t, then update with the (possibly
/// manipulated) feedback for that round, which advances t.
class Ranker {
 public:
  virtual ~Ranker() = default;

  virtual std::string_view name() const noexcept = 0;

  std::size_t num_items() const noexcept { return num_items_; }
  std::size_t list_size() const noexcept { return list_size_; }
  double alpha() const noexcept { return alpha_; }
  /// Round about to be played; starts at 1.
  std::uint64_t round() const noexcept { return t_; }

  /// U_a evaluated with ln t for the current round and counters through t-1.
  virtual double ucb(ItemId id) const = 0;
  virtual ItemState state(ItemId id) const = 0;

  /// K items with the largest UCB, descending, ties to the smaller id.
  RankedList recommend() const;
  /// Writes U_a for every item into `out` (resized to L).
  void ucb_all(std::vector<double>& out) const;

  /// Rejects feedback whose length differs from K or whose clicks are not
  /// examined. Advances the round counter.
  void update(const RankedList& list, const FeedbackRound& feedback);

 protected:
  Ranker(std::size_t num_items, std::size_t list_size, double alpha);

  virtual void apply(const RankedList& list, const FeedbackRound& feedback) = 0;

 private:
  std::size_t num_items_;
  std::size_t list_size_;
  double alpha_;
  std::uint64_t t_ = 1;
};

/// CascadeUCB1 with the literal initialisation N_a = 1, w_hat_a = 0: the
/// initial count acts as one unclicked pseudo-examination.
class CascadeUcb1 final : public Ranker {
 public:
  CascadeUcb1(std::size_t num_items, std::size_t list_size, double alpha);

  std::string_view name() const noexcept override { return "cascade-ucb1"; }
  double ucb(ItemId id) const override;
  ItemState state(ItemId id) const override;

  std::uint64_t count(ItemId id) const { return count_.at(index_of(id)); }
  /// Real examinations received, excluding the initial pseudo-count.
  std::uint64_t examinations(ItemId id) const { return count(id) - 1; }
  double mean(ItemId id) const;

 private:
  void apply(const RankedList& list, const FeedbackRound& feedback) override;

  std::vector<std::uint64_t> count_;
  std::vector<std::uint64_t> clicks_;
};

/// PBM-UCB. n_a starts at 1 as a pseudo-count that never enters N_tilde_a.
class PbmUcb final : public Ranker {
 public:
  PbmUcb(std::size_t num_items, PositionBias bias, double alpha);

  std::string_view name() const noexcept override { return "pbm-ucb"; }
  double ucb(ItemId id) const override;
  ItemState state(ItemId id) const override;

  const PositionBias& bias() const noexcept { return bias_; }
  std::uint64_t recommendations(ItemId id) const { return n_.at(index_of(id)); }
  std::uint64_t clicks(ItemId id) const { return clicks_.at(index_of(id)); }
  double exam_estimate(ItemId id) const { return exam_estimate_.at(index_of(id)); }

 private:
  void apply(const RankedList& list, const FeedbackRound& feedback) override;

  PositionBias bias_;
  std::vector<std::uint64_t> n_;
  std::vector<std::uint64_t> clicks_;
  std::vector<double> exam_estimate_;
};

}  // namespace oltr
