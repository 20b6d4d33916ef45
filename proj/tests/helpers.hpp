#pragma once

#include <random>

#include "thermoqfi/operator_core.hpp"

namespace testing {

inline thermoqfi::HermitianOperator random_hermitian(std::mt19937_64& rng, thermoqfi::Index dim) {
  std::normal_distribution<double> normal(0.0, 1.0);
  thermoqfi::ComplexMatrix g(dim, dim);
  for (thermoqfi::Index r = 0; r < dim; ++r)
    for (thermoqfi::Index c = 0; c < dim; ++c) g(r, c) = {normal(rng), normal(rng)};
  return thermoqfi::HermitianOperator(0.5 * (g + g.adjoint()));
}

inline double frobenius_gap(const thermoqfi::ComplexMatrix& a, const thermoqfi::ComplexMatrix& b) {
  return (a - b).norm();
}

}  // namespace testing
