#pragma once

#include <array>
#include <cstdint>
#include <string_view>

namespace oltr {

/// Deterministic random stream: xoshiro256** 1.0, seeded through splitmix64.
///
/// Every draw is produced from integer arithmetic only, so a given seed yields
/// the same sequence on every platform and compiler. The standard library's
/// distributions are not used for that reason.
///
/// Splitting rule:
///   run_seed(master, i)      = splitmix64 output after absorbing master and i
///   for_channel(seed, c)     = RngStream(seed) advanced by c jumps of 2^128
/// Channels of one run therefore occupy disjoint subsequences.
class RngStream {
 public:
  static constexpr std::string_view kAlgorithm = "xoshiro256** 1.0 (splitmix64 seeding, 2^128 jump per channel)";

  explicit RngStream(std::uint64_t seed) noexcept;

  /// Seed for replication `run_index` under `master_seed`.
  static std::uint64_t run_seed(std::uint64_t master_seed, std::uint64_t run_index) noexcept;
  /// Independent stream `channel` of a run.
  static RngStream for_channel(std::uint64_t seed, std::uint32_t channel) noexcept;

  std::uint64_t next_u64() noexcept;
  /// Uniform on [0,1) with 53 bits of resolution.
  double uniform01() noexcept;
  /// Returns true with probability p. p <= 0 never fires, p >= 1 always does.
  bool bernoulli(double p) noexcept;
  /// Uniform integer in [0, bound). bound must be positive.
  std::uint64_t below(std::uint64_t bound) noexcept;

  /// Advances the state by 2^128 draws.
  void jump() noexcept;

  std::uint64_t seed() const noexcept { return seed_; }

 private:
  std::uint64_t seed_;
  std::array<std::uint64_t, 4> s_{};
};

/// One splitmix64 step; exposed for seeding helpers and tests.
std::uint64_t splitmix64(std::uint64_t& state) noexcept;

}  // namespace oltr
