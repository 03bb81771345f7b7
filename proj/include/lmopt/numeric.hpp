#pragma once

#include "lmopt/types.hpp"

#include <span>

namespace lmopt {

// Pairwise (cascade) summation. Fixed association order makes the result
// independent of how callers might shard the input, and the error grows
// O(log n) instead of O(n).
inline Real pairwise_sum(std::span<const Real> values) {
  const std::size_t n = values.size();
  if (n <= 32) {
    Real s = 0.0;
    for (const Real v : values) s += v;
    return s;
  }
  const std::size_t half = n / 2;
  return pairwise_sum(values.subspan(0, half)) + pairwise_sum(values.subspan(half));
}

// FNV-1a, 64-bit. Used for content hashes of corpora and count tables.
struct Fnv1a {
  std::uint64_t state = 0xcbf29ce484222325ULL;

  void update(const void* data, std::size_t len) {
    const auto* bytes = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < len; ++i) {
      state ^= bytes[i];
      state *= 0x100000001b3ULL;
    }
  }
  void update_u64(std::uint64_t v) { update(&v, sizeof v); }
  void update_u32(std::uint32_t v) { update(&v, sizeof v); }

  std::uint64_t digest() const { return state; }
};

}  // namespace lmopt
