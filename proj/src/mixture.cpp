#include "lmopt/mixture.hpp"

#include "lmopt/errors.hpp"
#include "lmopt/numeric.hpp"

#include <cmath>
#include <vector>

namespace lmopt {

WeightVector::WeightVector(Vector lambda) : lambda_(std::move(lambda)) {
  if (lambda_.size() == 0) throw UsageError("weights: empty vector");
  if ((lambda_.array() < 0.0).any())
    throw UsageError("weights: negative component");
  if (std::abs(lambda_.sum() - 1.0) > kSimplexTolerance)
    throw UsageError("weights: components must sum to 1");
}

WeightVector WeightVector::vertex(int n, int order) {
  if (order < 1 || order > n) throw UsageError("weights: vertex order out of range");
  Vector v = Vector::Zero(n);
  v[order - 1] = 1.0;
  return WeightVector(std::move(v));
}

WeightVector WeightVector::uniform(int n) {
  if (n < 1) throw UsageError("weights: order count must be positive");
  return WeightVector(Vector::Constant(n, 1.0 / n));
}

Real mixture_prob(Eigen::Ref<const Vector> row, const WeightVector& w) {
  if (row.size() != w.coeffs().size())
    throw UsageError("mixture_prob: row and weight dimensions differ");
  return row.dot(w.coeffs());
}

PerplexityValue perplexity(const Matrix& p, const WeightVector& w) {
  if (p.rows() == 0) throw UsageError("perplexity: empty probability matrix");
  if (p.cols() != w.coeffs().size())
    throw UsageError("perplexity: matrix and weight dimensions differ");

  const Vector mixture = p * w.coeffs();
  PerplexityValue result;
  result.n_tokens = p.rows();
  if ((mixture.array() <= 0.0).any()) return result;  // weak model: +inf

  std::vector<Real> logs(static_cast<std::size_t>(mixture.size()));
  for (Index i = 0; i < mixture.size(); ++i)
    logs[static_cast<std::size_t>(i)] = std::log2(mixture[i]);
  result.log2_per_token =
      -pairwise_sum(logs) / static_cast<Real>(result.n_tokens);
  result.value = std::exp2(result.log2_per_token);
  return result;
}

PerplexityValue perplexity(const ProbabilityMatrix& matrix, const WeightVector& w) {
  return perplexity(matrix.p, w);
}

WeightVector two_param_weights(Real lambda, Real mu) {
  if (!(lambda >= 0.0 && lambda <= 1.0 && mu >= 0.0 && mu <= 1.0))
    throw UsageError("two_param_weights: lambda and mu must lie in [0, 1]");
  Vector v(3);
  v << (1.0 - lambda) * (1.0 - mu), (1.0 - lambda) * mu, lambda;
  return WeightVector(std::move(v));
}

}  // namespace lmopt
