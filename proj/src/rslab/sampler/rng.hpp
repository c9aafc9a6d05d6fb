#pragma once

#include <cstdint>
#include <random>

namespace rslab {

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Seed for the stream numbered `index` under `seed`. Distinct pairs give
/// unrelated seeds.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) noexcept {
  return mix64(mix64(seed) ^ mix64(index + 0x632be59bd9b4e019ULL));
}

using Rng = std::mt19937_64;

inline Rng make_stream(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(derive_seed(seed, index)),
                    static_cast<std::uint32_t>(derive_seed(seed, index) >> 32)};
  return Rng(seq);
}

/// Uniform integer in [0, bound), bound > 0, by multiply-and-reject
/// (Lemire); independent of the standard library's distributions.
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
  __extension__ using U128 = unsigned __int128;
  U128 m = static_cast<U128>(rng()) * bound;
  auto low = static_cast<std::uint64_t>(m);
  if (low < bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    while (low < threshold) {
      m = static_cast<U128>(rng()) * bound;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

/// Uniform double in [0, 1).
inline double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace rslab
