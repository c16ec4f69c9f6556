#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace infarm {

using Rng = std::mt19937_64;

/// Uniform on [0, 1) with 53 random bits.
inline double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Uniform on (0, 1]; safe to take the logarithm of.
inline double uniform_open0(Rng& rng) {
  return (static_cast<double>(rng() >> 11) + 1.0) * 0x1.0p-53;
}

/// Unbiased integer in [0, bound) (Lemire's multiply-and-reject).
inline std::uint64_t uniform_index(Rng& rng, std::uint64_t bound) {
  __extension__ using u128 = unsigned __int128;
  std::uint64_t x = rng();
  u128 m = static_cast<u128>(x) * bound;
  auto low = static_cast<std::uint64_t>(m);
  if (low < bound) {
    const std::uint64_t threshold = -bound % bound;
    while (low < threshold) {
      x = rng();
      m = static_cast<u128>(x) * bound;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

/// Number of failures before the first success of a Bernoulli(p) sequence, p in (0, 1].
inline std::uint64_t geometric_failures(Rng& rng, double p) {
  if (p >= 1.0) return 0;
  const double g = std::floor(std::log(uniform_open0(rng)) / std::log1p(-p));
  return g >= 1.8e19 ? UINT64_MAX : static_cast<std::uint64_t>(g);
}

}  // namespace infarm
