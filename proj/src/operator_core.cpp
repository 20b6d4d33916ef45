#include "thermoqfi/operator_core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include "thermoqfi/errors.hpp"

namespace thermoqfi {

namespace {

// exp(x) overflows a double just above 709.78.
constexpr double kMaxExponent = 700.0;

void require_same_dim(const HermitianOperator& a, const HermitianOperator& b,
                      std::string_view where) {
  if (a.dim() != b.dim()) {
    throw PreconditionError(fmt::format("{}: dimension mismatch ({} vs {})", where, a.dim(), b.dim()));
  }
}

double max_abs_deviation_from_identity(const ComplexMatrix& m) {
  return max_abs_entry(m - ComplexMatrix::Identity(m.rows(), m.cols()));
}

}  // namespace

double max_abs_entry(const ComplexMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

double hermiticity_defect(const ComplexMatrix& m) {
  return m.size() == 0 ? 0.0 : (m - m.adjoint()).cwiseAbs().maxCoeff();
}

HermitianOperator::HermitianOperator(ComplexMatrix matrix) {
  if (matrix.rows() != matrix.cols()) {
    throw PreconditionError(fmt::format("HermitianOperator: matrix is {}x{}, not square",
                                        matrix.rows(), matrix.cols()));
  }
  if (!matrix.allFinite()) {
    throw PreconditionError("HermitianOperator: matrix has non-finite entries");
  }
  const double defect = hermiticity_defect(matrix);
  const double limit = kHermiticityTolerance * std::max(1.0, max_abs_entry(matrix));
  if (defect > limit) {
    throw PreconditionError(fmt::format(
        "HermitianOperator: max |A_ij - conj(A_ji)| = {:.3e} exceeds {:.3e}", defect, limit));
  }
  matrix_ = 0.5 * (matrix + matrix.adjoint());
}

HermitianOperator HermitianOperator::symmetrized(const ComplexMatrix& matrix,
                                                 std::string_view origin,
                                                 double expected_residue) {
  if (matrix.rows() != matrix.cols()) {
    throw PreconditionError(fmt::format("{}: matrix is not square", origin));
  }
  if (!matrix.allFinite()) {
    throw NumericalError(fmt::format("{}: non-finite entries", origin));
  }
  const double discarded = 0.5 * hermiticity_defect(matrix);
  const double scale = std::max(1.0, max_abs_entry(matrix));
  if (discarded > expected_residue * scale) {
    spdlog::warn("{}: discarded anti-Hermitian part of magnitude {:.3e} (scale {:.3e})", origin,
                 discarded, scale);
  } else if (discarded > 0.0) {
    spdlog::trace("{}: discarded anti-Hermitian residue {:.3e}", origin, discarded);
  }
  return HermitianOperator(0.5 * (matrix + matrix.adjoint()), Trusted{});
}

HermitianOperator HermitianOperator::identity(Index dim) {
  return HermitianOperator(ComplexMatrix::Identity(dim, dim), Trusted{});
}

HermitianOperator HermitianOperator::zero(Index dim) {
  return HermitianOperator(ComplexMatrix::Zero(dim, dim), Trusted{});
}

HermitianOperator HermitianOperator::diagonal(const RealVector& entries) {
  if (!entries.allFinite()) {
    throw PreconditionError("HermitianOperator::diagonal: non-finite entries");
  }
  ComplexMatrix m = entries.cast<Complex>().asDiagonal();
  return HermitianOperator(std::move(m), Trusted{});
}

HermitianOperator HermitianOperator::squared() const {
  return symmetrized(matrix_ * matrix_, "HermitianOperator::squared");
}

HermitianOperator HermitianOperator::operator+(const HermitianOperator& other) const {
  require_same_dim(*this, other, "HermitianOperator::operator+");
  return HermitianOperator(matrix_ + other.matrix_, Trusted{});
}

HermitianOperator HermitianOperator::operator-(const HermitianOperator& other) const {
  require_same_dim(*this, other, "HermitianOperator::operator-");
  return HermitianOperator(matrix_ - other.matrix_, Trusted{});
}

HermitianOperator HermitianOperator::operator-() const {
  return HermitianOperator(-matrix_, Trusted{});
}

HermitianOperator HermitianOperator::scaled(double factor) const {
  return HermitianOperator(factor * matrix_, Trusted{});
}

ComplexMatrix SpectralDecomposition::to_eigenbasis(const ComplexMatrix& x) const {
  return eigenvectors.adjoint() * x * eigenvectors;
}

ComplexMatrix SpectralDecomposition::from_eigenbasis(const ComplexMatrix& x) const {
  return eigenvectors * x * eigenvectors.adjoint();
}

UnitaryOperator::UnitaryOperator(ComplexMatrix matrix) : matrix_(std::move(matrix)) {
  if (matrix_.rows() != matrix_.cols()) {
    throw PreconditionError("UnitaryOperator: matrix is not square");
  }
  if (!matrix_.allFinite()) {
    throw PreconditionError("UnitaryOperator: non-finite entries");
  }
  const double defect = max_abs_deviation_from_identity(matrix_ * matrix_.adjoint());
  if (defect > kUnitarityTolerance) {
    throw PreconditionError(
        fmt::format("UnitaryOperator: max |U U^dagger - I| = {:.3e} exceeds {:.1e}", defect,
                    kUnitarityTolerance));
  }
}

SpectralDecomposition eigendecompose(const HermitianOperator& a) {
  if (a.dim() == 0) {
    throw PreconditionError("eigendecompose: empty operator");
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(a.matrix(), Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("eigendecompose: Hermitian eigensolver did not converge",
                         std::numeric_limits<double>::infinity());
  }

  SpectralDecomposition result{solver.eigenvalues(), solver.eigenvectors()};

  const double orthonormality =
      max_abs_deviation_from_identity(result.eigenvectors.adjoint() * result.eigenvectors);
  if (orthonormality > kOrthonormalityTolerance) {
    throw NumericalError(
        fmt::format("eigendecompose: eigenvectors not orthonormal (residual {:.3e})", orthonormality),
        orthonormality);
  }

  const double spectral_norm =
      std::max(std::abs(result.min_eigenvalue()), std::abs(result.max_eigenvalue()));
  const ComplexMatrix lambda = result.eigenvalues.cast<Complex>().asDiagonal();
  const double reconstruction = max_abs_entry(result.from_eigenbasis(lambda) - a.matrix());
  if (reconstruction > kReconstructionTolerance * std::max(1.0, spectral_norm)) {
    throw NumericalError(
        fmt::format("eigendecompose: reconstruction residual {:.3e} too large", reconstruction),
        reconstruction);
  }
  return result;
}

ComplexMatrix matrix_exp_scaled(const SpectralDecomposition& spectrum, Complex scale) {
  Eigen::VectorXcd factors(spectrum.dim());
  for (Index k = 0; k < spectrum.dim(); ++k) {
    const Complex exponent = scale * spectrum.eigenvalues(k);
    if (exponent.real() > kMaxExponent) {
      throw NumericalError(fmt::format("matrix_exp_scaled: exponent {:.3e} overflows; build "
                                       "thermal states with gibbs_state (log-domain weights)",
                                       exponent.real()));
    }
    factors(k) = std::exp(exponent);
  }
  return spectrum.eigenvectors * factors.asDiagonal() * spectrum.eigenvectors.adjoint();
}

ComplexMatrix matrix_exp_scaled(const HermitianOperator& a, Complex scale) {
  if (scale == Complex{0.0, 0.0}) {
    return ComplexMatrix::Identity(a.dim(), a.dim());
  }
  return matrix_exp_scaled(eigendecompose(a), scale);
}

UnitaryOperator unitary_evolution(const SpectralDecomposition& spectrum, double t) {
  return UnitaryOperator(matrix_exp_scaled(spectrum, Complex{0.0, -t}));
}

HermitianOperator commutator_i(const HermitianOperator& a, const HermitianOperator& b) {
  require_same_dim(a, b, "commutator_i");
  const ComplexMatrix ab = a.matrix() * b.matrix();
  const ComplexMatrix ba = b.matrix() * a.matrix();
  return HermitianOperator::symmetrized(Complex{0.0, 1.0} * (ab - ba), "commutator_i");
}

double seminorm(const SpectralDecomposition& spectrum) {
  return std::max(0.0, spectrum.max_eigenvalue() - spectrum.min_eigenvalue());
}

double seminorm(const HermitianOperator& a) {
  if (a.dim() == 0) {
    throw PreconditionError("seminorm: empty operator");
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(a.matrix(), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("seminorm: Hermitian eigensolver did not converge",
                         std::numeric_limits<double>::infinity());
  }
  const RealVector& ev = solver.eigenvalues();
  return std::max(0.0, ev(ev.size() - 1) - ev(0));
}

double expectation(const HermitianOperator& a, const HermitianOperator& rho) {
  require_same_dim(a, rho, "expectation");
  return (rho.matrix() * a.matrix()).trace().real();
}

double variance(const HermitianOperator& a, const HermitianOperator& rho) {
  require_same_dim(a, rho, "variance");
  const double trace = rho.matrix().trace().real();
  if (std::abs(trace - 1.0) > 1e-12) {
    throw PreconditionError(fmt::format("variance: Tr[rho] = {:.17g} is not 1", trace));
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(rho.matrix(), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("variance: eigensolver failed on rho");
  }
  if (solver.eigenvalues()(0) < -1e-12) {
    throw PreconditionError(
        fmt::format("variance: rho has negative eigenvalue {:.3e}", solver.eigenvalues()(0)));
  }
  const ComplexMatrix rho_a = rho.matrix() * a.matrix();
  const double mean = rho_a.trace().real();
  const double second = (rho_a * a.matrix()).trace().real();
  const double var = second - mean * mean;
  if (var < -1e-12) {
    throw NumericalError(fmt::format("variance: negative result {:.3e}", var), -var);
  }
  return std::max(var, 0.0);
}

}  // namespace thermoqfi
