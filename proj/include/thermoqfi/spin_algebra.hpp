#pragma once

#include "thermoqfi/operator_core.hpp"

namespace thermoqfi {

/// Spin quantum number stored as 2J so half-integers are exact.
class SpinQuantumNumber {
 public:
  /// Throws PreconditionError for twice_j < 1.
  explicit SpinQuantumNumber(int twice_j);

  int twice_j() const noexcept { return twice_j_; }
  double j() const noexcept { return 0.5 * twice_j_; }
  Index dim() const noexcept { return twice_j_ + 1; }

  friend bool operator==(SpinQuantumNumber, SpinQuantumNumber) = default;

 private:
  int twice_j_;
};

/// J_x, J_y, J_z in the J_z eigenbasis, ordered M = -J, ..., +J.
struct SpinOperators {
  HermitianOperator jx;
  HermitianOperator jy;
  HermitianOperator jz;
};

SpinOperators spin_operators(SpinQuantumNumber j);

/// J_x J_y + J_y J_x. Note i[J_z, t J_x^2] = -t (J_x J_y + J_y J_x).
HermitianOperator oat_commutator(SpinQuantumNumber j);
HermitianOperator oat_commutator(const SpinOperators& ops);

/// J_x^2 - J_y^2, the pi/4 rotation of oat_commutator about z.
HermitianOperator rotated_oat_operator(SpinQuantumNumber j);
HermitianOperator rotated_oat_operator(const SpinOperators& ops);

}  // namespace thermoqfi
