#pragma once

#include <cstdint>
#include <random>

namespace dss {

// Seed used when a command is invoked without --seed.
inline constexpr std::uint64_t kDefaultSeed = 20240917ULL;

// std::mt19937_64 output is fully specified by the standard, so everything
// drawn through it (and through uniform_below) is reproducible across
// toolchains. std::uniform_int_distribution is not, hence the helper.
using Rng = std::mt19937_64;

// Uniform integer in [0, bound) by rejection; bound must be > 0.
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
  const std::uint64_t limit = bound * ((~std::uint64_t{0}) / bound);
  std::uint64_t draw = rng();
  while (draw >= limit) draw = rng();
  return draw % bound;
}

// Uniform integer in [lo, hi].
inline std::int64_t uniform_in(Rng& rng, std::int64_t lo, std::int64_t hi) {
  return lo + static_cast<std::int64_t>(
                  uniform_below(rng, static_cast<std::uint64_t>(hi - lo) + 1));
}

}  // namespace dss
