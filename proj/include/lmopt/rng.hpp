#pragma once

#include "lmopt/types.hpp"

#include <cstdint>
#include <random>
#include <span>

namespace lmopt {

// splitmix64; used to derive independent seeds for sub-streams so that
// per-fold / per-method randomness never aliases the parent stream.
inline std::uint64_t mix_seed(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
  return mix_seed(mix_seed(a) ^ b);
}

inline std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b, std::uint64_t c) {
  return mix_seed(mix_seed(a, b) ^ c);
}

// mt19937_64 is fully specified by the standard, so every draw below is
// reproducible across platforms and standard libraries. The std distribution
// adaptors are not; we roll our own.
using Rng = std::mt19937_64;

// Uniform integer in [0, bound) by rejection, no modulo bias.
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
  const std::uint64_t limit = std::uint64_t(-1) - std::uint64_t(-1) % bound;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

// Uniform double in (0, 1); never returns 0 so -log(u) stays finite.
inline Real uniform_open01(Rng& rng) {
  for (;;) {
    const Real u = static_cast<Real>(rng() >> 11) * 0x1.0p-53;
    if (u > 0.0) return u;
  }
}

// In-place Fisher-Yates with explicit draws (std::shuffle is unspecified).
template <typename T>
void shuffle(std::span<T> values, Rng& rng) {
  for (std::size_t i = values.size(); i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(uniform_below(rng, i));
    std::swap(values[i - 1], values[j]);
  }
}

}  // namespace lmopt
