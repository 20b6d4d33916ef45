#pragma once

#include "thermoqfi/operator_core.hpp"
#include "thermoqfi/spin_algebra.hpp"

namespace thermoqfi {

/// Probabilities smaller than this are clamped up to it so that every
/// pair sum p_i + p_j stays strictly positive.
inline constexpr double kProbabilityFloor = 1e-300;

/// A density operator given in its eigenbasis: rho = sum_i p_i |psi_i><psi_i|.
struct SpectralProbe {
  RealVector probabilities;
  ComplexMatrix eigenvectors;

  Index dim() const noexcept { return probabilities.size(); }

  /// Validates non-negative weights summing to 1 (within 1e-10) and
  /// orthonormal columns.
  static SpectralProbe create(RealVector probabilities, ComplexMatrix eigenvectors);

  /// Diagonalizes rho; eigenvalues in [-1e-12, 0) are clamped to 0.
  static SpectralProbe from_density(const HermitianOperator& rho);

  HermitianOperator density_matrix() const;
};

/// rho_0 = exp(-beta H) / Z with Boltzmann weights taken relative to the
/// ground energy.
struct GibbsState {
  double beta = 0.0;
  HermitianOperator hamiltonian;
  SpectralDecomposition decomposition;
  RealVector probabilities;
  double ground_energy = 0.0;
  /// log sum_i exp(-beta (E_i - E_0)).
  double log_partition_shifted = 0.0;
  /// Set when at least one weight underflowed and was clamped to
  /// kProbabilityFloor: the state is a ground-state projector to working
  /// precision.
  bool effectively_pure = false;

  Index dim() const noexcept { return probabilities.size(); }
  /// log Z = log_partition_shifted - beta * E_0.
  double log_partition() const noexcept { return log_partition_shifted - beta * ground_energy; }

  HermitianOperator density_matrix() const;
  SpectralProbe probe() const { return SpectralProbe{probabilities, decomposition.eigenvectors}; }
  /// Tr[rho_0^2].
  double purity() const;
  /// Tr[rho_0 A^2] - Tr[rho_0 A]^2 evaluated in the energy eigenbasis.
  double variance(const HermitianOperator& a) const;
};

/// Throws PreconditionError for beta < 0 or non-finite beta.
GibbsState gibbs_state(const HermitianOperator& hamiltonian, double beta);
GibbsState gibbs_state(const HermitianOperator& hamiltonian, SpectralDecomposition decomposition,
                       double beta);

/// Z = sum_M exp(-beta M) and Z2 = sum_M M^2 exp(-beta M) for H = J_z.
/// Both are stored scaled by exp(-log_scale); log_scale is nonzero only when
/// beta * J > 700, where the unscaled sums would overflow.
struct PartitionMoments {
  double z = 0.0;
  double z2 = 0.0;
  double log_scale = 0.0;

  double z2_over_z() const noexcept { return z2 / z; }
};

PartitionMoments partition_moments(SpinQuantumNumber j, double beta);

/// P = tanh(beta / 2).
double polarization(double beta);
/// beta = 2 atanh(P) for P in [0, 1).
double beta_from_polarization(double p);

}  // namespace thermoqfi
