#include "lmopt/grid_search.hpp"

#include "lmopt/errors.hpp"
#include "lmopt/rng.hpp"

#include <cmath>
#include <vector>

namespace lmopt {

namespace {

std::uint64_t checked_resolution(const GridConfig& cfg) {
  if (cfg.n < 1) throw UsageError("grid: need at least one weight");
  if (!(cfg.step > 0.0 && cfg.step <= 1.0))
    throw UsageError("grid: step must lie in (0, 1]");
  const Real inverse = 1.0 / cfg.step;
  const Real rounded = std::round(inverse);
  if (std::abs(inverse - rounded) > 1e-9)
    throw UsageError("grid: 1/step must be an integer");
  return static_cast<std::uint64_t>(rounded);
}

struct Best {
  bool has = false;
  Vector lambda;
  PerplexityValue perplexity;

  void offer(const Vector& candidate, const PerplexityValue& value) {
    if (!has || value.value < perplexity.value) {
      has = true;
      lambda = candidate;
      perplexity = value;
    }
  }
};

}  // namespace

std::uint64_t grid_point_count(const GridConfig& cfg) {
  const std::uint64_t m = checked_resolution(cfg);
  // Compositions of m into n nonnegative parts: C(m + n - 1, n - 1).
  std::uint64_t count = 1;
  for (int i = 1; i < cfg.n; ++i) count = count * (m + i) / i;
  return count;
}

SearchResult grid_search(const Matrix& p, const GridConfig& cfg) {
  if (p.rows() == 0) throw UsageError("grid: empty probability matrix");
  if (p.cols() != cfg.n) throw UsageError("grid: matrix has wrong column count");
  const std::uint64_t m = checked_resolution(cfg);
  const Real resolution = static_cast<Real>(m);

  Best best;
  std::uint64_t evaluated = 0;
  std::vector<std::uint64_t> counts(static_cast<std::size_t>(cfg.n), 0);
  Vector lambda(cfg.n);

  // Nested loops over k_1 .. k_{n-1}, written as a manual recursion so n is
  // not fixed at compile time.
  const auto evaluate_leaf = [&](std::uint64_t used) {
    counts[static_cast<std::size_t>(cfg.n) - 1] = m - used;
    for (int j = 0; j < cfg.n; ++j)
      lambda[j] = static_cast<Real>(counts[static_cast<std::size_t>(j)]) / resolution;
    const WeightVector w{Vector(lambda)};
    best.offer(lambda, perplexity(p, w));
    ++evaluated;
  };
  const auto descend = [&](const auto& self, int depth, std::uint64_t used) -> void {
    if (depth == cfg.n - 1) {
      evaluate_leaf(used);
      return;
    }
    for (std::uint64_t k = 0; k + used <= m; ++k) {
      counts[static_cast<std::size_t>(depth)] = k;
      self(self, depth + 1, used + k);
    }
  };
  descend(descend, 0, 0);

  if (!best.perplexity.finite()) {
    // Every lattice point is a weak model; report the all-unigram vertex.
    const WeightVector unigram = WeightVector::vertex(cfg.n, 1);
    return SearchResult{unigram, perplexity(p, unigram), evaluated};
  }
  return SearchResult{WeightVector(std::move(best.lambda)), best.perplexity, evaluated};
}

SearchResult grid_search(const ProbabilityMatrix& matrix, const GridConfig& cfg) {
  return grid_search(matrix.p, cfg);
}

SearchResult random_search(const Matrix& p, std::uint64_t samples, std::uint64_t seed) {
  if (p.rows() == 0) throw UsageError("random_search: empty probability matrix");
  if (samples == 0) throw UsageError("random_search: need at least one sample");
  const int n = static_cast<int>(p.cols());

  Best best;
  for (int j = 1; j <= n; ++j) {
    const WeightVector vertex = WeightVector::vertex(n, j);
    best.offer(vertex.coeffs(), perplexity(p, vertex));
  }

  Rng rng(seed);
  Vector draw(n);
  for (std::uint64_t s = 0; s < samples; ++s) {
    // Normalized unit exponentials: uniform on the simplex.
    for (int j = 0; j < n; ++j) draw[j] = -std::log(uniform_open01(rng));
    draw /= draw.sum();
    best.offer(draw, perplexity(p, WeightVector(Vector(draw))));
  }

  return SearchResult{WeightVector(std::move(best.lambda)), best.perplexity,
                      samples + static_cast<std::uint64_t>(n)};
}

SearchResult random_search(const ProbabilityMatrix& matrix, std::uint64_t samples,
                           std::uint64_t seed) {
  return random_search(matrix.p, samples, seed);
}

}  // namespace lmopt
