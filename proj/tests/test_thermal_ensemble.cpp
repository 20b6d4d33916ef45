#include "doctest.h"
#include "helpers.hpp"
#include "thermoqfi/errors.hpp"
#include "thermoqfi/spin_algebra.hpp"
#include "thermoqfi/thermal_ensemble.hpp"

#include <cmath>

using namespace thermoqfi;

TEST_CASE("infinite temperature is maximally mixed") {
  std::mt19937_64 rng(1);
  const auto h = testing::random_hermitian(rng, 5);
  const auto state = gibbs_state(h, 0.0);
  for (Index i = 0; i < 5; ++i) CHECK(state.probabilities(i) == 0.2);
  CHECK(state.purity() == doctest::Approx(0.2));
  CHECK_THROWS_AS(gibbs_state(h, -1.0), PreconditionError);
}

TEST_CASE("partition functions of J_z") {
  const auto half = gibbs_state(spin_operators(SpinQuantumNumber(1)).jz, 2.0);
  CHECK(std::exp(half.log_partition()) == doctest::Approx(2.0 * std::cosh(1.0)).epsilon(1e-12));
  CHECK(std::exp(half.log_partition()) == doctest::Approx(3.0862).epsilon(1e-4));

  const auto one = gibbs_state(spin_operators(SpinQuantumNumber(2)).jz, 1.0);
  const double z = std::exp(one.log_partition());
  CHECK(z == doctest::Approx(std::exp(1.0) + 1.0 + std::exp(-1.0)).epsilon(1e-12));
  CHECK(z == doctest::Approx(std::sinh(1.5) / std::sinh(0.5)).epsilon(1e-12));
}

TEST_CASE("partition moments") {
  for (int twice_j = 1; twice_j <= 10; ++twice_j) {
    const SpinQuantumNumber j(twice_j);
    const auto m0 = partition_moments(j, 0.0);
    CHECK(m0.z == doctest::Approx(2 * j.j() + 1));
    CHECK(m0.z2 == doctest::Approx(j.j() * (j.j() + 1) * (2 * j.j() + 1) / 3));
  }
  for (double beta : {0.1, 1.0, 5.0}) {
    const auto m = partition_moments(SpinQuantumNumber(1), beta);
    CHECK(m.z2 == doctest::Approx(m.z / 4));
  }
  const auto m1 = partition_moments(SpinQuantumNumber(2), 1.0);
  CHECK(m1.z2 == doctest::Approx(std::exp(1.0) + std::exp(-1.0)));
  // huge beta stays finite through the shift
  const auto big = partition_moments(SpinQuantumNumber(40), 100.0);
  CHECK(std::isfinite(big.z));
  CHECK(big.z2_over_z() == doctest::Approx(400.0).epsilon(1e-9));
}

TEST_CASE("polarization") {
  CHECK(polarization(0.0) == 0.0);
  CHECK(polarization(2.0) == doctest::Approx(0.761594).epsilon(1e-6));
  CHECK(polarization(60.0) == doctest::Approx(1.0));
  double previous = 0.0;
  for (double beta = 0.1; beta < 20; beta += 0.1) {
    CHECK(polarization(beta) > previous - 1e-15);
    previous = polarization(beta);
    CHECK(beta_from_polarization(polarization(beta)) == doctest::Approx(beta).epsilon(1e-9));
  }
  CHECK_THROWS_AS(beta_from_polarization(1.0), PreconditionError);
  CHECK_THROWS_AS(beta_from_polarization(-0.1), PreconditionError);
}

TEST_CASE("purity grows with beta") {
  const auto jz = spin_operators(SpinQuantumNumber(6)).jz;
  double previous = 0.0;
  for (double beta = 0.0; beta <= 10.0; beta += 0.5) {
    const double purity = gibbs_state(jz, beta).purity();
    CHECK(purity >= previous - 1e-14);
    previous = purity;
  }
  CHECK(previous <= 1.0 + 1e-12);
}

TEST_CASE("gibbs state is covariant under unitary conjugation") {
  std::mt19937_64 rng(17);
  const auto h = testing::random_hermitian(rng, 4);
  const auto u = unitary_evolution(eigendecompose(testing::random_hermitian(rng, 4)), 1.3).matrix();
  const HermitianOperator rotated(u * h.matrix() * u.adjoint());
  const ComplexMatrix a = u * gibbs_state(h, 1.7).density_matrix().matrix() * u.adjoint();
  const ComplexMatrix b = gibbs_state(rotated, 1.7).density_matrix().matrix();
  CHECK(testing::frobenius_gap(a, b) < 1e-10);
}

TEST_CASE("very low temperature flags a pure state") {
  const auto state = gibbs_state(spin_operators(SpinQuantumNumber(4)).jz, 1000.0);
  CHECK(state.effectively_pure);
  CHECK(state.probabilities(0) == doctest::Approx(1.0));
  CHECK(std::isfinite(state.log_partition()));
}
