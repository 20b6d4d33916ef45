#include "doctest.h"
#include "helpers.hpp"
#include "thermoqfi/qfi_engine.hpp"
#include "thermoqfi/spin_algebra.hpp"

#include <cmath>

using namespace thermoqfi;

TEST_CASE("tanhc") {
  CHECK(tanhc(0.0) == 1.0);
  CHECK(tanhc(2.0) == doctest::Approx(std::tanh(2.0) / 2.0).epsilon(1e-15));
  CHECK(tanhc(2.0) == doctest::Approx(0.482014).epsilon(1e-6));
  for (double x : {1e-8, 1e-6, 1e-5, 1e-4, 0.3, 1.0, 7.0, 40.0}) {
    CHECK(tanhc(-x) == tanhc(x));
    CHECK(tanhc(x) <= 1.0);
    CHECK(tanhc(x) > 0.0);
  }
  CHECK(tanhc(9.99999e-6) == doctest::Approx(std::tanh(9.99999e-6) / 9.99999e-6).epsilon(1e-15));
}

TEST_CASE("qubit thermal QFI") {
  const auto ops = spin_operators(SpinQuantumNumber(1));
  for (double beta : {0.3, 1.0, 2.0, 6.0}) {
    for (double t : {0.5, 1.0, 2.0}) {
      const auto state = gibbs_state(ops.jz, beta);
      const auto h = ops.jx.scaled(t);
      const double expected = t * t * std::pow(std::tanh(beta / 2), 2);
      CHECK(qfi_general(state, h) == doctest::Approx(expected).epsilon(1e-12));
      CHECK(qfi_thermal(state, h) == doctest::Approx(expected).epsilon(1e-12));
      CHECK(qfi_sld(state, h) == doctest::Approx(expected).epsilon(1e-12));
    }
  }
  CHECK(qfi_general(gibbs_state(ops.jz, 2.0), ops.jx) == doctest::Approx(0.580026).epsilon(1e-6));
}

TEST_CASE("maximally mixed probe carries no information") {
  std::mt19937_64 rng(29);
  const auto h = testing::random_hermitian(rng, 6);
  const auto state = gibbs_state(testing::random_hermitian(rng, 6), 0.0);
  CHECK(std::abs(qfi_general(state, h)) < 1e-12);
  CHECK(std::abs(qfi_thermal(state, h)) < 1e-12);
  CHECK(std::abs(qfi_sld(state, h)) < 1e-12);
}

TEST_CASE("commuting generator carries no information") {
  const auto ops = spin_operators(SpinQuantumNumber(6));
  const auto state = gibbs_state(ops.jz, 1.3);
  CHECK(qfi_general(state, ops.jz.scaled(2.0)) == 0.0);
  CHECK(qfi_thermal(state, ops.jz.squared()) == 0.0);
  CHECK(qfi_sld(state, ops.jz) == 0.0);
}

TEST_CASE("ground-state limit matches the pure-state QFI") {
  const auto ops = spin_operators(SpinQuantumNumber(1));
  const auto state = gibbs_state(ops.jz, 50.0);
  CHECK(qfi_general(state, ops.jx) == doctest::Approx(1.0).epsilon(1e-12));
  Eigen::VectorXcd ground = Eigen::VectorXcd::Zero(2);
  ground(0) = 1.0;
  CHECK(qfi_pure(ground, ops.jx) == doctest::Approx(1.0).epsilon(1e-14));
  const auto report = qfi_report(gibbs_state(ops.jz, 1000.0), ops.jx);
  CHECK(report.pure_state_flag);
  CHECK(report.f_general == doctest::Approx(1.0));
}

TEST_CASE("three formulas agree on random scenarios and scale as c^2") {
  std::mt19937_64 rng(31);
  for (int k = 0; k < 300; ++k) {
    const Index dim = 2 + k % 7;
    const auto state = gibbs_state(testing::random_hermitian(rng, dim), 0.05 + 0.03 * k);
    const auto h = testing::random_hermitian(rng, dim);
    const auto report = qfi_report(state, h);
    REQUIRE(report.max_pairwise_rel_diff < 1e-9);
    REQUIRE(report.f_general >= 0.0);
    REQUIRE(report.f_general <= 4.0 * state.variance(h) + 1e-9);
    REQUIRE(qfi_general(state, h.scaled(3.0)) == doctest::Approx(9.0 * report.f_general).epsilon(1e-9));
  }
}

TEST_CASE("SLD form on generic probes") {
  const auto ops = spin_operators(SpinQuantumNumber(2));
  const auto state = gibbs_state(ops.jz, 1.0);
  CHECK(qfi_sld(state, ops.jx) == doctest::Approx(qfi_general(state, ops.jx)).epsilon(1e-10));

  // uniform weights: (p_i - p_j)^2 vanishes
  std::mt19937_64 rng(37);
  const auto h = testing::random_hermitian(rng, 4);
  const auto probe = SpectralProbe::create(RealVector::Constant(4, 0.25), ComplexMatrix::Identity(4, 4));
  CHECK(qfi_sld(probe, h) == 0.0);
  // diagonal generator in the probe basis
  RealVector p(3);
  p << 0.5, 0.3, 0.2;
  RealVector d(3);
  d << 1.0, -2.0, 0.5;
  const auto diag_probe = SpectralProbe::create(p, ComplexMatrix::Identity(3, 3));
  CHECK(qfi_sld(diag_probe, HermitianOperator::diagonal(d)) == 0.0);
}

TEST_CASE("agreement gap") {
  CHECK(agreement_gap(1.0, 1.0) == 0.0);
  CHECK(agreement_gap(0.0, 1e-12) == doctest::Approx(1e-12));
  CHECK(agreement_gap(100.0, 101.0) == doctest::Approx(1.0 / 101.0));
}
