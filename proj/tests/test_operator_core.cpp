#include "doctest.h"
#include "helpers.hpp"
#include "thermoqfi/errors.hpp"
#include "thermoqfi/operator_core.hpp"
#include "thermoqfi/spin_algebra.hpp"

#include <cmath>
#include <numbers>

using namespace thermoqfi;

TEST_CASE("hermitian operator rejects non-hermitian and non-square input") {
  ComplexMatrix a(2, 2);
  a << 1.0, Complex{0.0, 1.0}, Complex{0.0, 1.0}, 2.0;
  CHECK_THROWS_AS(HermitianOperator{a}, PreconditionError);
  CHECK_THROWS_AS(HermitianOperator{ComplexMatrix(2, 3)}, PreconditionError);
  ComplexMatrix nan = ComplexMatrix::Identity(2, 2);
  nan(0, 0) = std::nan("");
  CHECK_THROWS_AS(HermitianOperator{nan}, PreconditionError);
}

TEST_CASE("spin spectra") {
  const auto half = spin_operators(SpinQuantumNumber(1));
  const auto s = eigendecompose(half.jz);
  CHECK(s.eigenvalues(0) == doctest::Approx(-0.5));
  CHECK(s.eigenvalues(1) == doctest::Approx(0.5));

  const auto one = spin_operators(SpinQuantumNumber(2));
  const auto sy = eigendecompose(one.jy);
  CHECK(sy.eigenvalues(0) == doctest::Approx(-1.0));
  CHECK(std::abs(sy.eigenvalues(1)) < 1e-12);
  CHECK(sy.eigenvalues(2) == doctest::Approx(1.0));
}

TEST_CASE("random eigendecompositions reconstruct the input") {
  std::mt19937_64 rng(7);
  for (int k = 0; k < 1000; ++k) {
    const Index dim = 2 + k % 7;
    const HermitianOperator a = testing::random_hermitian(rng, dim);
    const auto s = eigendecompose(a);
    const ComplexMatrix rebuilt =
        s.eigenvectors * s.eigenvalues.cast<Complex>().asDiagonal() * s.eigenvectors.adjoint();
    REQUIRE(testing::frobenius_gap(rebuilt, a.matrix()) <= 1e-10 * std::max(1.0, a.matrix().norm()));
    REQUIRE(testing::frobenius_gap(s.eigenvectors.adjoint() * s.eigenvectors,
                                   ComplexMatrix::Identity(dim, dim)) <= 1e-10);
    for (Index i = 1; i < dim; ++i) REQUIRE(s.eigenvalues(i) >= s.eigenvalues(i - 1));
  }
}

TEST_CASE("matrix exponential") {
  const auto jz = spin_operators(SpinQuantumNumber(1)).jz;
  CHECK(testing::frobenius_gap(matrix_exp_scaled(jz, 0.0), ComplexMatrix::Identity(2, 2)) == 0.0);

  const ComplexMatrix e = matrix_exp_scaled(jz, Complex{0.0, -std::numbers::pi});
  CHECK(std::abs(e(0, 0) - std::exp(Complex{0.0, std::numbers::pi / 2})) < 1e-12);
  CHECK(std::abs(e(1, 1) - std::exp(Complex{0.0, -std::numbers::pi / 2})) < 1e-12);

  std::mt19937_64 rng(3);
  const HermitianOperator a = testing::random_hermitian(rng, 5);
  const UnitaryOperator u = unitary_evolution(eigendecompose(a), 1.7);
  CHECK(testing::frobenius_gap(u.matrix() * u.matrix().adjoint(), ComplexMatrix::Identity(5, 5)) <= 1e-10);

  CHECK_THROWS_AS(matrix_exp_scaled(HermitianOperator::diagonal(RealVector::Constant(2, 1000.0)), 1.0),
                  NumericalError);
}

TEST_CASE("commutator") {
  const auto ops = spin_operators(SpinQuantumNumber(1));
  CHECK(testing::frobenius_gap(commutator_i(ops.jx, ops.jy).matrix(), -ops.jz.matrix()) < 1e-12);
  CHECK(commutator_i(ops.jx, ops.jx).matrix().norm() == 0.0);

  const auto one = spin_operators(SpinQuantumNumber(2));
  const ComplexMatrix c = commutator_i(one.jz, one.jx).matrix();
  CHECK(max_abs_entry(c + one.jy.matrix()) <= 1e-12);

  std::mt19937_64 rng(11);
  for (int k = 0; k < 50; ++k) {
    const auto a = testing::random_hermitian(rng, 4);
    const auto b = testing::random_hermitian(rng, 4);
    CHECK(testing::frobenius_gap(commutator_i(a, b).matrix(), -commutator_i(b, a).matrix()) < 1e-12);
  }
}

TEST_CASE("seminorm") {
  for (int twice_j = 1; twice_j <= 12; ++twice_j) {
    const SpinQuantumNumber j(twice_j);
    CHECK(seminorm(spin_operators(j).jz) == doctest::Approx(2.0 * j.j()));
  }
  CHECK(seminorm(spin_operators(SpinQuantumNumber(1)).jy) == doctest::Approx(1.0));
  CHECK(seminorm(HermitianOperator::identity(4)) == doctest::Approx(0.0));

  // invariant under unitary conjugation and shifts
  std::mt19937_64 rng(5);
  for (int k = 0; k < 50; ++k) {
    const auto a = testing::random_hermitian(rng, 6);
    const auto u = unitary_evolution(eigendecompose(testing::random_hermitian(rng, 6)), 0.9);
    const HermitianOperator rotated(u.matrix() * a.matrix() * u.matrix().adjoint());
    CHECK(seminorm(rotated) == doctest::Approx(seminorm(a)).epsilon(1e-10));
    CHECK(seminorm(a + HermitianOperator::identity(6).scaled(3.0)) ==
          doctest::Approx(seminorm(a)).epsilon(1e-10));
  }
}

TEST_CASE("variance") {
  const auto half = spin_operators(SpinQuantumNumber(1));
  RealVector p(2);
  p << 1.0, 0.0;
  const auto pure = HermitianOperator::diagonal(p);
  CHECK(variance(half.jz, pure) == doctest::Approx(0.0));

  for (double beta : {0.0, 0.5, 2.0, 7.0}) {
    RealVector w(2);
    w << std::exp(beta / 2), std::exp(-beta / 2);
    const auto rho = HermitianOperator::diagonal(w / w.sum());
    CHECK(variance(half.jy, rho) == doctest::Approx(0.25));
  }

  // Var <= ||A||^2 / 4 for every state
  std::mt19937_64 rng(13);
  for (int k = 0; k < 200; ++k) {
    const auto a = testing::random_hermitian(rng, 4);
    const ComplexMatrix g = testing::random_hermitian(rng, 4).matrix();
    const ComplexMatrix m = g * g.adjoint();
    const HermitianOperator rho(0.5 * (m + m.adjoint()) / m.trace().real());
    const double s = seminorm(a);
    CHECK(variance(a, rho) <= s * s / 4 + 1e-12);
  }

  CHECK_THROWS_AS(variance(half.jz, HermitianOperator::identity(2)), PreconditionError);
}
