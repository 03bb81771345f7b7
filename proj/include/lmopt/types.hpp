#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <limits>

namespace lmopt {

using Real = double;
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

// Index into a token table (corpus-level) or a model vocabulary.
using TokenId = std::uint32_t;

inline constexpr Real kInf = std::numeric_limits<Real>::infinity();

}  // namespace lmopt
