#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "homofiber/lie_core.hpp"

namespace testing_support {

using namespace homofiber;

inline AlgebraElement random_unit(const Subspace& s, std::mt19937_64& rng) {
  if (s.empty()) return AlgebraElement::zero(s.ambient());
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> c(s.dim());
  for (double& x : c) x = normal(rng);
  const AlgebraElement v = s.combine(c);
  return v / norm_B(v);
}

inline AlgebraElement random_skew(std::size_t n, std::mt19937_64& rng, double scale = 1.0) {
  std::normal_distribution<double> normal(0.0, scale);
  Matrix m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) m(r, c) = Complex(normal(rng), normal(rng));
  }
  return AlgebraElement::from_matrix(0.5 * (m - m.adjoint()));
}

inline GroupElement random_group(std::size_t n, std::mt19937_64& rng) {
  return expm(random_skew(n, rng));
}

}  // namespace testing_support
