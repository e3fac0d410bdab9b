#pragma once

#include <cstdint>
#include <random>

namespace depcov {

/// Engine used for every random draw in the library.
using Rng = std::mt19937_64;

/// SplitMix64 finaliser.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Seed of substream `index` under `base`:
///   splitmix64(splitmix64(base) ^ splitmix64(index + 0x5851F42D4C957F2D)).
/// Bootstrap replicate b, experiment repetition r and simulated block k all
/// draw from substream_seed(parent, index). No state is shared between
/// substreams, so results do not depend on execution order.
constexpr std::uint64_t substream_seed(std::uint64_t base, std::uint64_t index) noexcept {
  return splitmix64(splitmix64(base) ^ splitmix64(index + 0x5851F42D4C957F2DULL));
}

Rng make_rng(std::uint64_t seed);

inline Rng substream(std::uint64_t base, std::uint64_t index) {
  return make_rng(substream_seed(base, index));
}

}  // namespace depcov
