#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace tailsum {

/// SplitMix64 step; used to expand seeds and to hash stream keys.
constexpr std::uint64_t splitmix64(std::uint64_t& state) noexcept {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  std::uint64_t s = x;
  return splitmix64(s);
}

/// xoshiro256++ (Blackman & Vigna). Satisfies UniformRandomBitGenerator.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit constexpr Rng(std::uint64_t seed = 0) noexcept { reseed(seed); }

  /// Independent stream for replication `index` of stream `stream` under
  /// `seed`. The mapping is a fixed function of the three integers, so a
  /// replication sees the same numbers no matter which thread runs it.
  static constexpr Rng substream(std::uint64_t seed, std::uint64_t stream,
                                 std::uint64_t index) noexcept {
    std::uint64_t key = mix64(seed);
    key = mix64(key ^ (stream * 0xd1b54a32d192ed03ULL + 0x8bb84b93962eacc9ULL));
    key = mix64(key ^ (index * 0xaef17502108ef2d9ULL + 0x4f1bbcdcbfa53e0bULL));
    return Rng(key);
  }

  constexpr void reseed(std::uint64_t seed) noexcept {
    std::uint64_t sm = seed;
    for (auto& w : s_) w = splitmix64(sm);
  }

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept {
    return std::numeric_limits<result_type>::max();
  }

  constexpr result_type operator()() noexcept {
    const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  /// Uniform on (0, 1]: k * 2^-53 for k in [1, 2^53]. Never returns 0, so
  /// inverse-transform sampling of power tails stays finite.
  constexpr double uniform() noexcept {
    return static_cast<double>(((*this)() >> 11) + 1) * 0x1.0p-53;
  }

 private:
  static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
    return (x << k) | (x >> (64 - k));
  }

  std::array<std::uint64_t, 4> s_{};
};

}  // namespace tailsum
