#include "oltr/profile.hpp"

#include <algorithm>
#include <functional>
#include <string>

namespace oltr {
namespace {

void check_probabilities(std::span<const double> w) {
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!(w[i] >= 0.0 && w[i] <= 1.0)) {
      throw ValidationError("probability out of range: w_" + std::to_string(i + 1) + " = " + std::to_string(w[i]));
    }
  }
}

}  // namespace

AttractionProfile::AttractionProfile(std::vector<double> w) : w_(std::move(w)) { check_probabilities(w_); }

AttractionProfile AttractionProfile::from_pairs(std::span<const std::pair<ItemId, double>> pairs) {
  const std::size_t L = pairs.size();
  std::vector<double> w(L, 0.0);
  std::vector<bool> seen(L, false);
  for (const auto& [id, value] : pairs) {
    const auto v = id_value(id);
    if (v == 0 || v > L) {
      throw ValidationError("item identifier " + std::to_string(v) + " outside 1.." + std::to_string(L));
    }
    if (seen[index_of(id)]) throw ValidationError("duplicate item identifier " + std::to_string(v));
    seen[index_of(id)] = true;
    w[index_of(id)] = value;
  }
  return AttractionProfile(std::move(w));
}

bool AttractionProfile::is_sorted() const noexcept {
  return std::is_sorted(w_.begin(), w_.end(), std::greater<>{});
}

AttractionProfile validate_profile(AttractionProfile profile, std::size_t K) {
  check_probabilities(profile.weights());
  if (K == 0) throw ValidationError("K must be at least 1");
  if (K > profile.size()) {
    throw ValidationError("K exceeds L (K=" + std::to_string(K) + ", L=" + std::to_string(profile.size()) + ")");
  }
  return profile;
}

RankedList optimal_list(const AttractionProfile& profile, std::size_t K) {
  return top_k_by_score(profile.weights(), K);
}

}  // namespace oltr
