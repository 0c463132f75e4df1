#include "oltr/rng.hpp"

namespace oltr {
namespace {

constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept { return (x << k) | (x >> (64 - k)); }

}  // namespace

std::uint64_t splitmix64(std::uint64_t& state) noexcept {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

RngStream::RngStream(std::uint64_t seed) noexcept : seed_(seed) {
  std::uint64_t sm = seed;
  for (auto& word : s_) word = splitmix64(sm);
}

std::uint64_t RngStream::run_seed(std::uint64_t master_seed, std::uint64_t run_index) noexcept {
  std::uint64_t state = master_seed;
  const std::uint64_t mixed_master = splitmix64(state);
  state = mixed_master ^ run_index;
  splitmix64(state);
  return splitmix64(state);
}

RngStream RngStream::for_channel(std::uint64_t seed, std::uint32_t channel) noexcept {
  RngStream stream(seed);
  for (std::uint32_t i = 0; i < channel; ++i) stream.jump();
  return stream;
}

std::uint64_t RngStream::next_u64() noexcept {
  const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

double RngStream::uniform01() noexcept {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

bool RngStream::bernoulli(double p) noexcept { return uniform01() < p; }

std::uint64_t RngStream::below(std::uint64_t bound) noexcept {
  // Rejection on the top of the range keeps the result unbiased.
  const std::uint64_t limit = -bound % bound;
  for (;;) {
    const std::uint64_t x = next_u64();
    if (x >= limit) return x % bound;
  }
}

void RngStream::jump() noexcept {
  static constexpr std::uint64_t kJump[] = {0x180ec6d33cfd0abaULL, 0xd5a61266f0c9392cULL, 0xa9582618e03fc9aaULL,
                                            0x39abdc4529b1661cULL};
  std::array<std::uint64_t, 4> acc{};
  for (auto word : kJump) {
    for (int b = 0; b < 64; ++b) {
      if (word & (std::uint64_t{1} << b)) {
        for (std::size_t k = 0; k < 4; ++k) acc[k] ^= s_[k];
      }
      next_u64();
    }
  }
  s_ = acc;
}

}  // namespace oltr
