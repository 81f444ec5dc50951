#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "rootbound/scalar.hpp"

namespace rootbound {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  std::uint64_t z = x;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

/// Independent generator for stream `index` of `seed`.  Trials draw from
/// their own streams, so results do not depend on execution order.
inline std::mt19937_64 rng_stream(std::uint64_t seed, std::uint64_t index) {
  return std::mt19937_64(splitmix64(seed ^ splitmix64(index)));
}

/// Uniform in [0, 1) from raw bits; reproducible across standard libraries
/// (distribution objects are not).
inline Real uniform_unit(std::mt19937_64& rng) {
  return static_cast<Real>(rng() >> 11) * 0x1.0p-53;
}

inline Real uniform_range(std::mt19937_64& rng, Real lo, Real hi) {
  return lo + (hi - lo) * uniform_unit(rng);
}

/// Uniform by area in the closed disc of the given radius.
inline Scalar uniform_disc(std::mt19937_64& rng, Real radius) {
  const Real r = radius * std::sqrt(uniform_unit(rng));
  const Real theta = kTwoPi * uniform_unit(rng);
  return {r * std::cos(theta), r * std::sin(theta)};
}

/// Strictly inside the open disc; resamples the measure-zero boundary.
inline Scalar uniform_open_disc(std::mt19937_64& rng, Real radius) {
  if (!(radius > 0)) return Scalar(0);
  for (;;) {
    const Scalar s = uniform_disc(rng, radius);
    if (std::abs(s) < radius) return s;
  }
}

}  // namespace rootbound
