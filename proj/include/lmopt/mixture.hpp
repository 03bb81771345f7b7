#pragma once

#include "lmopt/ngram_model.hpp"
#include "lmopt/types.hpp"

namespace lmopt {

// Interpolation weights on the probability simplex. Index convention all
// through the project: component j is the weight of the order-(j+1) n-gram,
// so coeffs()[0] is the unigram weight. Vectors off the simplex are rejected
// at construction, never silently normalized.
class WeightVector {
 public:
  explicit WeightVector(Vector lambda);

  static WeightVector vertex(int n, int order);  // all mass on one order
  static WeightVector uniform(int n);

  int order_count() const { return static_cast<int>(lambda_.size()); }
  const Vector& coeffs() const { return lambda_; }
  Real operator[](int j) const { return lambda_[j]; }

  bool operator==(const WeightVector& other) const {
    return lambda_ == other.lambda_;
  }

 private:
  Vector lambda_;
};

inline constexpr Real kSimplexTolerance = 1e-9;

struct PerplexityValue {
  Real value = kInf;           // 2^log2_per_token when finite
  Real log2_per_token = kInf;
  Index n_tokens = 0;

  bool finite() const { return value != kInf; }
};

// Convex combination of one row's component probabilities.
Real mixture_prob(Eigen::Ref<const Vector> row, const WeightVector& w);

// Inverse geometric mean of the mixture probabilities, computed in log
// space so it never underflows. Any non-positive mixture probability makes
// the whole value +infinity (the weak-model condition) rather than an error,
// so searches can traverse such points and simply never select them.
PerplexityValue perplexity(const Matrix& p, const WeightVector& w);
PerplexityValue perplexity(const ProbabilityMatrix& matrix, const WeightVector& w);

// Trigram weights from the two-parameter form: lambda is the trigram share
// and mu splits the rest between bigram and unigram. Returns
// ((1-lambda)(1-mu), (1-lambda)mu, lambda).
WeightVector two_param_weights(Real lambda, Real mu);

}  // namespace lmopt
