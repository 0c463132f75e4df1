#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <span>
#include <string_view>
#include <vector>

#include "oltr/profile.hpp"

namespace oltr {

/// MovieLens layouts: `user<TAB>item<TAB>rating<TAB>timestamp` (100K-style,
/// no header) and `userId,movieId,rating,timestamp` with a header row.
enum class RatingsFormat { LegacyTsv, HeaderedCsv };

/// Accepts "tsv"/"legacy" and "csv". Anything else is a ValidationError.
RatingsFormat parse_ratings_format(std::string_view tag);

struct Rating {
  std::uint64_t user = 0;
  std::uint64_t movie = 0;
  double rating = 0;
  std::int64_t timestamp = 0;
};

inline constexpr double kMinRating = 0.5;
inline constexpr double kMaxRating = 5.0;

struct RatingsTable {
  std::vector<Rating> records;
  /// Rows that failed to parse or fell outside the rating scale.
  std::size_t skipped = 0;
};

/// Throws IoError for an unreadable file and ValidationError when no row parses.
RatingsTable parse_movielens(const std::filesystem::path& path, RatingsFormat format);
RatingsTable parse_movielens(std::istream& in, RatingsFormat format);

struct MovieAttraction {
  std::uint64_t successes = 0;  // ratings strictly above the threshold
  std::uint64_t total = 0;
  double probability() const noexcept {
    return total ? static_cast<double>(successes) / static_cast<double>(total) : 0.0;
  }
};

inline constexpr double kDefaultThreshold = 3.0;
inline constexpr std::size_t kDefaultMinCount = 20;

/// Per movie with at least `min_count` ratings: share of ratings > threshold.
std::map<std::uint64_t, MovieAttraction> attraction_probs(const RatingsTable& table,
                                                          double threshold = kDefaultThreshold,
                                                          std::size_t min_count = kDefaultMinCount);

enum class SelectionMode { GivenIds, TopVariance, SeededArbitrary };

SelectionMode parse_selection_mode(std::string_view tag);

struct SelectedProfile {
  AttractionProfile profile;
  /// Movie id behind item i+1.
  std::vector<std::uint64_t> source_ids;
};

/// Picks L movies and relabels them 1..L by descending probability (ties to
/// the smaller movie id).
///   GivenIds        the movies in `given_ids` (exactly L of them)
///   TopVariance     the L largest w(1-w), ties to the smaller movie id
///   SeededArbitrary a seeded shuffle of all eligible movies, first L taken
SelectedProfile select_profile(const std::map<std::uint64_t, MovieAttraction>& probs, std::size_t L,
                               SelectionMode mode, std::uint64_t seed = 0,
                               std::span<const std::uint64_t> given_ids = {});

/// Ten-movie MovieLens profile used for the reference experiments:
/// w = (0.336, 0.204, 0.163, 0.125, 0.112, 0.105, 0.099, 0.090, 0.086, 0.082).
AttractionProfile movielens10_profile();

/// Named built-in profiles: "movielens10".
AttractionProfile builtin_profile(std::string_view name);

/// Profile file: CSV with header `item,w` or `item,w,source_id`.
void write_profile(std::ostream& out, const AttractionProfile& profile,
                   std::span<const std::uint64_t> source_ids = {});
AttractionProfile read_profile(std::istream& in);
AttractionProfile read_profile(const std::filesystem::path& path);

}  // namespace oltr
