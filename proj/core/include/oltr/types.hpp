#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace oltr {

/// Raised when an input violates a documented precondition or invariant.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised for unreadable inputs and unwritable outputs.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// 1-based item identifier. Storage elsewhere is 0-based; use index_of().
enum class ItemId : std::uint32_t {};

constexpr ItemId item(std::uint32_t one_based) noexcept { return static_cast<ItemId>(one_based); }
constexpr std::uint32_t id_value(ItemId id) noexcept { return static_cast<std::uint32_t>(id); }
constexpr std::size_t index_of(ItemId id) noexcept { return static_cast<std::size_t>(id_value(id)) - 1; }
constexpr ItemId item_at_index(std::size_t index) noexcept {
  return item(static_cast<std::uint32_t>(index + 1));
}

/// An ordered recommendation. Position 1 (index 0) is the top slot.
class RankedList {
 public:
  RankedList() = default;
  /// Rejects the zero identifier and duplicates.
  explicit RankedList(std::vector<ItemId> items);
  RankedList(std::initializer_list<std::uint32_t> ids);

  std::size_t size() const noexcept { return items_.size(); }
  bool empty() const noexcept { return items_.empty(); }
  ItemId operator[](std::size_t index) const { return items_[index]; }
  ItemId at_position(std::size_t position) const;  // 1-based

  /// 1-based position of `id`, if listed.
  std::optional<std::size_t> position_of(ItemId id) const noexcept;
  bool contains(ItemId id) const noexcept { return position_of(id).has_value(); }

  /// True when both lists hold the same items in any order.
  bool is_permutation_of(const RankedList& other) const;

  std::span<const ItemId> items() const noexcept { return items_; }
  auto begin() const noexcept { return items_.begin(); }
  auto end() const noexcept { return items_.end(); }

  std::string to_string() const;  // "4 7 10"

  friend bool operator==(const RankedList&, const RankedList&) = default;

 private:
  std::vector<ItemId> items_;
};

/// Checks |list| = K and every entry lies in 1..L.
void validate_list(const RankedList& list, std::size_t K, std::size_t L);

/// Returns the K indices with the largest scores, in descending score
/// order. Equal scores go to the smaller item identifier.
RankedList top_k_by_score(std::span<const double> scores, std::size_t K);

/// Per-position examination probabilities p_1 >= ... >= p_K, each in (0,1].
class PositionBias {
 public:
  PositionBias() = default;
  explicit PositionBias(std::vector<double> p);

  std::size_t size() const noexcept { return p_.size(); }
  double operator[](std::size_t index) const { return p_[index]; }
  double first() const { return p_.front(); }
  double last() const { return p_.back(); }
  /// p_1 / p_K
  double lambda() const { return p_.front() / p_.back(); }
  std::span<const double> values() const noexcept { return p_; }

  friend bool operator==(const PositionBias&, const PositionBias&) = default;

 private:
  std::vector<double> p_;
};

/// Feedback for one round, indexed by list position.
///
/// `clicks[i]` doubles as the reward r_a of the item at position i, since an
/// item occupies at most one slot per round. Items not in the list have
/// reward 0.
struct FeedbackRound {
  std::vector<std::uint8_t> exam;
  std::vector<std::uint8_t> clicks;
  bool manipulated = false;

  std::size_t size() const noexcept { return clicks.size(); }
  std::size_t click_count() const noexcept;

  /// r_{a,t} for any item, given the list the feedback refers to.
  int reward_of(const RankedList& list, ItemId id) const;

  /// Throws ValidationError unless exam and clicks have equal length and
  /// every click sits on an examined position.
  void check_consistent() const;
};

}  // namespace oltr
