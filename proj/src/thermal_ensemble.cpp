#include "thermoqfi/thermal_ensemble.hpp"

#include <cmath>

#include <fmt/format.h>

#include "thermoqfi/errors.hpp"

namespace thermoqfi {

namespace {

void require_valid_beta(double beta, const char* where) {
  if (!std::isfinite(beta) || beta < 0.0) {
    throw PreconditionError(fmt::format("{}: beta must be finite and >= 0, got {}", where, beta));
  }
}

}  // namespace

SpectralProbe SpectralProbe::create(RealVector probabilities, ComplexMatrix eigenvectors) {
  if (eigenvectors.rows() != eigenvectors.cols() || eigenvectors.cols() != probabilities.size()) {
    throw PreconditionError("SpectralProbe: eigenvector matrix does not match probability count");
  }
  for (Index i = 0; i < probabilities.size(); ++i) {
    if (!(probabilities(i) >= 0.0)) {
      throw PreconditionError(fmt::format("SpectralProbe: negative probability p[{}] = {}", i,
                                          probabilities(i)));
    }
  }
  const double total = probabilities.sum();
  if (std::abs(total - 1.0) > 1e-10) {
    throw PreconditionError(fmt::format("SpectralProbe: probabilities sum to {:.17g}", total));
  }
  const ComplexMatrix gram = eigenvectors.adjoint() * eigenvectors;
  if (max_abs_entry(gram - ComplexMatrix::Identity(gram.rows(), gram.cols())) >
      kOrthonormalityTolerance) {
    throw PreconditionError("SpectralProbe: eigenvectors are not orthonormal");
  }
  return SpectralProbe{std::move(probabilities), std::move(eigenvectors)};
}

SpectralProbe SpectralProbe::from_density(const HermitianOperator& rho) {
  SpectralDecomposition spectrum = eigendecompose(rho);
  RealVector p = spectrum.eigenvalues;
  for (Index i = 0; i < p.size(); ++i) {
    if (p(i) < 0.0 && p(i) >= -1e-12) p(i) = 0.0;
  }
  return create(std::move(p), std::move(spectrum.eigenvectors));
}

HermitianOperator SpectralProbe::density_matrix() const {
  const ComplexMatrix p = probabilities.cast<Complex>().asDiagonal();
  return HermitianOperator::symmetrized(eigenvectors * p * eigenvectors.adjoint(),
                                        "SpectralProbe::density_matrix");
}

HermitianOperator GibbsState::density_matrix() const { return probe().density_matrix(); }

double GibbsState::purity() const { return probabilities.squaredNorm(); }

double GibbsState::variance(const HermitianOperator& a) const {
  if (a.dim() != dim()) {
    throw PreconditionError("GibbsState::variance: dimension mismatch");
  }
  const ComplexMatrix local = decomposition.to_eigenbasis(a.matrix());
  double mean = 0.0;
  double second = 0.0;
  for (Index i = 0; i < dim(); ++i) {
    mean += probabilities(i) * local(i, i).real();
    second += probabilities(i) * local.row(i).squaredNorm();
  }
  const double var = second - mean * mean;
  if (var < -1e-12 * std::max(1.0, second)) {
    throw NumericalError(fmt::format("GibbsState::variance: negative result {:.3e}", var), -var);
  }
  return std::max(var, 0.0);
}

GibbsState gibbs_state(const HermitianOperator& hamiltonian, double beta) {
  require_valid_beta(beta, "gibbs_state");
  return gibbs_state(hamiltonian, eigendecompose(hamiltonian), beta);
}

GibbsState gibbs_state(const HermitianOperator& hamiltonian, SpectralDecomposition decomposition,
                       double beta) {
  require_valid_beta(beta, "gibbs_state");
  if (decomposition.dim() != hamiltonian.dim()) {
    throw PreconditionError("gibbs_state: decomposition does not match Hamiltonian");
  }
  const Index d = decomposition.dim();
  GibbsState state;
  state.beta = beta;
  state.hamiltonian = hamiltonian;
  state.ground_energy = decomposition.min_eigenvalue();
  state.probabilities.resize(d);

  if (beta == 0.0) {
    state.probabilities.setConstant(1.0 / static_cast<double>(d));
    state.log_partition_shifted = std::log(static_cast<double>(d));
  } else {
    RealVector weights(d);
    for (Index i = 0; i < d; ++i) {
      weights(i) = std::exp(-beta * (decomposition.eigenvalues(i) - state.ground_energy));
    }
    const double shifted_z = weights.sum();
    state.log_partition_shifted = std::log(shifted_z);
    for (Index i = 0; i < d; ++i) {
      double p = weights(i) / shifted_z;
      if (p < kProbabilityFloor) {
        p = kProbabilityFloor;
        state.effectively_pure = true;
      }
      state.probabilities(i) = p;
    }
  }
  state.decomposition = std::move(decomposition);
  return state;
}

PartitionMoments partition_moments(SpinQuantumNumber j, double beta) {
  require_valid_beta(beta, "partition_moments");
  const double jj = j.j();
  PartitionMoments out;
  out.log_scale = beta * jj > 700.0 ? beta * jj : 0.0;
  for (int k = 0; k <= j.twice_j(); ++k) {
    const double m = 0.5 * static_cast<double>(2 * k - j.twice_j());
    const double w = std::exp(-beta * m - out.log_scale);
    out.z += w;
    out.z2 += m * m * w;
  }
  return out;
}

double polarization(double beta) {
  require_valid_beta(beta, "polarization");
  return std::tanh(0.5 * beta);
}

double beta_from_polarization(double p) {
  if (!(p >= 0.0 && p < 1.0)) {
    throw PreconditionError(fmt::format("beta_from_polarization: P must lie in [0, 1), got {}", p));
  }
  return 2.0 * std::atanh(p);
}

}  // namespace thermoqfi
