#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "oltr/types.hpp"

namespace oltr {

/// Attraction probabilities w_a for the item universe 1..L.
class AttractionProfile {
 public:
  AttractionProfile() = default;
  /// w[i] is the attraction of item i+1. Every value must lie in [0,1].
  explicit AttractionProfile(std::vector<double> w);

  /// Builds from explicit (item, w) pairs in any order. The identifiers must
  /// be exactly {1..L} with no duplicates.
  static AttractionProfile from_pairs(std::span<const std::pair<ItemId, double>> pairs);

  std::size_t size() const noexcept { return w_.size(); }
  double w(ItemId id) const { return w_.at(index_of(id)); }
  std::span<const double> weights() const noexcept { return w_; }

  /// Nonincreasing w, so the optimal list is (1..K).
  bool is_sorted() const noexcept;

  friend bool operator==(const AttractionProfile&, const AttractionProfile&) = default;

 private:
  std::vector<double> w_;
};

/// Returns `profile` unchanged if 1 <= K <= L and every w lies in [0,1].
AttractionProfile validate_profile(AttractionProfile profile, std::size_t K);

/// The K most attractive items, in descending w, ties to the smaller id.
RankedList optimal_list(const AttractionProfile& profile, std::size_t K);

}  // namespace oltr
