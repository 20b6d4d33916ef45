#pragma once

// Dense complex Hermitian operator algebra: eigendecomposition, matrix
// functions, commutators, variances and seminorms.
//
// Every routine here is a pure function of its inputs. Hermiticity is
// validated on construction and numerical anti-Hermitian residue produced by
// products is removed by symmetrization (X + X^dagger) / 2.

#include <complex>
#include <string_view>

#include <Eigen/Dense>

namespace thermoqfi {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

inline constexpr double kHermiticityTolerance = 1e-12;
inline constexpr double kOrthonormalityTolerance = 1e-10;
inline constexpr double kReconstructionTolerance = 1e-10;
inline constexpr double kUnitarityTolerance = 1e-10;

/// Largest |a_ij| over all entries, 0 for an empty matrix.
double max_abs_entry(const ComplexMatrix& m);

/// max_ij |a_ij - conj(a_ji)|.
double hermiticity_defect(const ComplexMatrix& m);

class HermitianOperator {
 public:
  HermitianOperator() = default;

  /// Validates squareness, finiteness and
  /// max|A_ij - conj(A_ji)| <= 1e-12 * max(1, max|A_ij|).
  /// Throws PreconditionError otherwise.
  explicit HermitianOperator(ComplexMatrix matrix);

  /// Projects onto the Hermitian part and logs the discarded anti-Hermitian
  /// magnitude, at warning level when it exceeds
  /// expected_residue * max(1, max|A_ij|). Use for results that are Hermitian
  /// analytically but carry rounding residue (products, commutators).
  static HermitianOperator symmetrized(const ComplexMatrix& matrix, std::string_view origin,
                                       double expected_residue = kHermiticityTolerance);

  static HermitianOperator identity(Index dim);
  static HermitianOperator zero(Index dim);
  static HermitianOperator diagonal(const RealVector& entries);

  const ComplexMatrix& matrix() const noexcept { return matrix_; }
  Index dim() const noexcept { return matrix_.rows(); }

  /// A^2, symmetrized.
  HermitianOperator squared() const;

  HermitianOperator operator+(const HermitianOperator& other) const;
  HermitianOperator operator-(const HermitianOperator& other) const;
  HermitianOperator operator-() const;
  HermitianOperator scaled(double factor) const;

  friend HermitianOperator operator*(double factor, const HermitianOperator& op) {
    return op.scaled(factor);
  }

 private:
  struct Trusted {};
  HermitianOperator(ComplexMatrix matrix, Trusted) : matrix_(std::move(matrix)) {}

  ComplexMatrix matrix_;
};

/// Eigenvalues ascending; columns of `eigenvectors` are the matching
/// orthonormal eigenvectors. No ordering guarantee inside degenerate blocks.
struct SpectralDecomposition {
  RealVector eigenvalues;
  ComplexMatrix eigenvectors;

  Index dim() const noexcept { return eigenvalues.size(); }
  double min_eigenvalue() const { return eigenvalues(0); }
  double max_eigenvalue() const { return eigenvalues(eigenvalues.size() - 1); }

  /// V^dagger X V: matrix elements <psi_i|X|psi_j>.
  ComplexMatrix to_eigenbasis(const ComplexMatrix& x) const;
  /// V X V^dagger.
  ComplexMatrix from_eigenbasis(const ComplexMatrix& x) const;
};

class UnitaryOperator {
 public:
  /// Throws PreconditionError when max|U U^dagger - I| > 1e-10.
  explicit UnitaryOperator(ComplexMatrix matrix);

  const ComplexMatrix& matrix() const noexcept { return matrix_; }
  Index dim() const noexcept { return matrix_.rows(); }

 private:
  ComplexMatrix matrix_;
};

/// Throws NumericalError (carrying the residual) if the solver does not
/// converge or the result misses the orthonormality/reconstruction contract.
SpectralDecomposition eigendecompose(const HermitianOperator& a);

/// exp(scale * A) through the spectral decomposition. Throws NumericalError
/// when Re(scale * lambda) would overflow; thermal weights should then go
/// through the ground-shifted Gibbs construction instead.
ComplexMatrix matrix_exp_scaled(const HermitianOperator& a, Complex scale);
ComplexMatrix matrix_exp_scaled(const SpectralDecomposition& spectrum, Complex scale);

/// exp(-i t A).
UnitaryOperator unitary_evolution(const SpectralDecomposition& spectrum, double t);

/// i[A, B] = i(AB - BA).
HermitianOperator commutator_i(const HermitianOperator& a, const HermitianOperator& b);

/// Spectral width E_max - E_min.
double seminorm(const HermitianOperator& a);
double seminorm(const SpectralDecomposition& spectrum);

/// Tr[rho A^2] - Tr[rho A]^2 for a unit-trace positive semidefinite rho.
/// Values in [-1e-12, 0) are clamped to zero.
double variance(const HermitianOperator& a, const HermitianOperator& rho);

/// Tr[rho A].
double expectation(const HermitianOperator& a, const HermitianOperator& rho);

}  // namespace thermoqfi
