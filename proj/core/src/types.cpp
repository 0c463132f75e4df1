#include "oltr/types.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace oltr {

RankedList::RankedList(std::vector<ItemId> items) : items_(std::move(items)) {
  for (std::size_t i = 0; i < items_.size(); ++i) {
    if (id_value(items_[i]) == 0) throw ValidationError("item identifiers are 1-based");
    for (std::size_t j = 0; j < i; ++j) {
      if (items_[j] == items_[i]) {
        throw ValidationError("duplicate item " + std::to_string(id_value(items_[i])) + " in ranked list");
      }
    }
  }
}

RankedList::RankedList(std::initializer_list<std::uint32_t> ids) {
  std::vector<ItemId> items;
  items.reserve(ids.size());
  for (auto v : ids) items.push_back(item(v));
  *this = RankedList(std::move(items));
}

ItemId RankedList::at_position(std::size_t position) const {
  if (position == 0 || position > items_.size()) throw ValidationError("position out of range");
  return items_[position - 1];
}

std::optional<std::size_t> RankedList::position_of(ItemId id) const noexcept {
  for (std::size_t i = 0; i < items_.size(); ++i) {
    if (items_[i] == id) return i + 1;
  }
  return std::nullopt;
}

bool RankedList::is_permutation_of(const RankedList& other) const {
  return std::is_permutation(items_.begin(), items_.end(), other.items_.begin(), other.items_.end());
}

std::string RankedList::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < items_.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(id_value(items_[i]));
  }
  return out;
}

void validate_list(const RankedList& list, std::size_t K, std::size_t L) {
  if (list.size() != K) {
    throw ValidationError("ranked list has " + std::to_string(list.size()) + " entries, expected K=" +
                          std::to_string(K));
  }
  for (auto id : list) {
    if (id_value(id) > L) {
      throw ValidationError("item " + std::to_string(id_value(id)) + " outside universe 1.." + std::to_string(L));
    }
  }
}

RankedList top_k_by_score(std::span<const double> scores, std::size_t K) {
  if (K > scores.size()) throw ValidationError("K exceeds L");
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(K), order.end(),
                    [&](std::size_t a, std::size_t b) {
                      if (scores[a] != scores[b]) return scores[a] > scores[b];
                      return a < b;
                    });
  std::vector<ItemId> items;
  items.reserve(K);
  for (std::size_t i = 0; i < K; ++i) items.push_back(item_at_index(order[i]));
  return RankedList(std::move(items));
}

PositionBias::PositionBias(std::vector<double> p) : p_(std::move(p)) {
  if (p_.empty()) throw ValidationError("position bias must have at least one entry");
  for (std::size_t i = 0; i < p_.size(); ++i) {
    if (!(p_[i] > 0.0 && p_[i] <= 1.0)) throw ValidationError("position bias entries must lie in (0,1]");
    if (i > 0 && p_[i] > p_[i - 1]) throw ValidationError("position bias must be nonincreasing");
  }
}

std::size_t FeedbackRound::click_count() const noexcept {
  return static_cast<std::size_t>(std::count(clicks.begin(), clicks.end(), std::uint8_t{1}));
}

int FeedbackRound::reward_of(const RankedList& list, ItemId id) const {
  auto pos = list.position_of(id);
  if (!pos || *pos > clicks.size()) return 0;
  return clicks[*pos - 1];
}

void FeedbackRound::check_consistent() const {
  if (exam.size() != clicks.size()) throw ValidationError("exam and click vectors differ in length");
  for (std::size_t i = 0; i < clicks.size(); ++i) {
    if (clicks[i] > 1 || exam[i] > 1) throw ValidationError("feedback flags must be 0 or 1");
    if (clicks[i] && !exam[i]) throw ValidationError("click on an unexamined position");
  }
}

}  // namespace oltr
