#pragma once

#include "lmopt/mixture.hpp"

#include <cstdint>

namespace lmopt {

struct GridConfig {
  Real step = 0.1;  // 1/step must be integral
  int n = 3;        // number of weights
};

struct SearchResult {
  WeightVector weights;
  PerplexityValue perplexity;
  std::uint64_t points_evaluated = 0;
};

// Exhaustive search over the simplex lattice with the given step. Counts are
// enumerated as integers (k_1, ..., k_{n-1}) with sum <= 1/step and the last
// weight takes the remainder, so no floating error accumulates across the
// loop. k_1 moves slowest; ties keep the first point visited. If every point
// is infinite the all-unigram vertex is returned, still at +infinity.
SearchResult grid_search(const Matrix& p, const GridConfig& cfg);
SearchResult grid_search(const ProbabilityMatrix& matrix, const GridConfig& cfg);

// Baseline: `samples` uniform draws from the simplex (plus every vertex,
// which are always evaluated first). Deterministic in the seed.
SearchResult random_search(const Matrix& p, std::uint64_t samples, std::uint64_t seed);
SearchResult random_search(const ProbabilityMatrix& matrix, std::uint64_t samples,
                           std::uint64_t seed);

// Number of lattice points grid_search visits for the given config.
std::uint64_t grid_point_count(const GridConfig& cfg);

}  // namespace lmopt
