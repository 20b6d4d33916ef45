#include "thermoqfi/spin_algebra.hpp"

#include <cmath>

#include <fmt/format.h>

#include "thermoqfi/errors.hpp"

namespace thermoqfi {

SpinQuantumNumber::SpinQuantumNumber(int twice_j) : twice_j_(twice_j) {
  if (twice_j < 1) {
    throw PreconditionError(fmt::format("SpinQuantumNumber: twice_j must be >= 1, got {}", twice_j));
  }
}

SpinOperators spin_operators(SpinQuantumNumber j) {
  const Index d = j.dim();
  const double jj = j.j();
  const double casimir = jj * (jj + 1.0);

  RealVector m(d);
  ComplexMatrix raise = ComplexMatrix::Zero(d, d);
  for (Index k = 0; k < d; ++k) {
    // M = -J + k computed from integers: (2k - 2J) / 2 is exact.
    m(k) = 0.5 * static_cast<double>(2 * k - j.twice_j());
  }
  // <M+1| J_+ |M> = sqrt(J(J+1) - M(M+1))
  for (Index k = 0; k + 1 < d; ++k) {
    raise(k + 1, k) = std::sqrt(casimir - m(k) * (m(k) + 1.0));
  }
  const ComplexMatrix lower = raise.adjoint();
  const Complex two_i{0.0, 2.0};

  return SpinOperators{
      HermitianOperator(0.5 * (raise + lower)),
      HermitianOperator((raise - lower) / two_i),
      HermitianOperator::diagonal(m),
  };
}

HermitianOperator oat_commutator(const SpinOperators& ops) {
  const ComplexMatrix xy = ops.jx.matrix() * ops.jy.matrix();
  const ComplexMatrix yx = ops.jy.matrix() * ops.jx.matrix();
  return HermitianOperator::symmetrized(xy + yx, "oat_commutator");
}

HermitianOperator oat_commutator(SpinQuantumNumber j) { return oat_commutator(spin_operators(j)); }

HermitianOperator rotated_oat_operator(const SpinOperators& ops) {
  return ops.jx.squared() - ops.jy.squared();
}

HermitianOperator rotated_oat_operator(SpinQuantumNumber j) {
  return rotated_oat_operator(spin_operators(j));
}

}  // namespace thermoqfi
