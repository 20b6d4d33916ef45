#include "doctest.h"
#include "helpers.hpp"
#include "thermoqfi/encoding_generator.hpp"
#include "thermoqfi/errors.hpp"
#include "thermoqfi/qfi_engine.hpp"
#include "thermoqfi/spin_algebra.hpp"

#include <cmath>

using namespace thermoqfi;

namespace {

double rel_gap(const HermitianOperator& a, const HermitianOperator& b) {
  return (a.matrix() - b.matrix()).norm() / std::max(1e-300, b.matrix().norm());
}

HamiltonianFamily lmg(const SpinOperators& ops, double lambda, double t) {
  const HermitianOperator jx2 = ops.jx.squared();
  return {[jx2, jz = ops.jz](double l) { return jx2 + l * jz; }, ops.jz, lambda, t};
}

}  // namespace

TEST_CASE("evolution kernel") {
  CHECK(evolution_kernel(0.0, 2.5) == Complex{2.5, 0.0});
  const double gap = 0.7;
  const double t = 1.9;
  const Complex expected = (std::exp(Complex{0.0, gap * t}) - 1.0) / Complex{0.0, gap};
  CHECK(std::abs(evolution_kernel(gap, t) - expected) < 1e-14);
  // both sides of the series switch match t (1 + i gap t / 2) to working precision
  for (double g : {0.999e-9, 1.001e-9}) {
    const double s = 1.0;
    const Complex series{s, g * s / 2};
    CHECK(std::abs(evolution_kernel(g, s) - series) < 1e-15);
  }
}

TEST_CASE("explicit generator") {
  const auto ops = spin_operators(SpinQuantumNumber(4));
  CHECK(rel_gap(generator_explicit(ops.jx, 2.0).h, ops.jx.scaled(2.0)) < 1e-15);
  CHECK(rel_gap(generator_explicit(ops.jx.squared(), 1.0).h, ops.jx.squared()) < 1e-15);
  CHECK(generator_explicit(ops.jx, 0.0).h.matrix().norm() == 0.0);
  CHECK_THROWS_AS(generator_explicit(ops.jx, -1.0), PreconditionError);
}

TEST_CASE("integral representation with commuting derivative") {
  const auto ops = spin_operators(SpinQuantumNumber(3));
  const HamiltonianFamily family{[jz = ops.jz](double l) { return jz.scaled(l); }, ops.jz, 0.8, 1.6};
  const auto h = generator_integral(family);
  CHECK(h.method == GeneratorMethod::integral);
  CHECK(rel_gap(h.h, ops.jz.scaled(1.6)) < 1e-12);
}

TEST_CASE("finite differences reproduce the explicit generator") {
  const auto ops = spin_operators(SpinQuantumNumber(5));
  const ExplicitGenerator scheme{ops.jx, 1.3};
  const auto fd = generator_fd(as_numeric_unitary(scheme, 0.4, 1e-5));
  CHECK(fd.method == GeneratorMethod::finite_difference);
  CHECK(rel_gap(fd.h, ops.jx.scaled(1.3)) < 1e-8);

  const NumericUnitary constant{[](double) { return UnitaryOperator(ComplexMatrix::Identity(3, 3)); },
                                0.0, 1e-5};
  CHECK(generator_fd(constant).h.matrix().norm() <= 1e-10);

  CHECK_THROWS_AS(generator_fd(as_numeric_unitary(scheme, 0.4, 0.0)), PreconditionError);
  CHECK_THROWS_AS(generator_fd(as_numeric_unitary(scheme, 0.4, 0.1)), PreconditionError);
}

TEST_CASE("LMG: integral and finite difference agree") {
  {
    const auto ops = spin_operators(SpinQuantumNumber(2));
    const auto family = lmg(ops, 1.0, 1.0);
    CHECK(rel_gap(generator_fd(as_numeric_unitary(family, 1e-5)).h, generator_integral(family).h) <
          1e-5);
  }
  {
    const auto ops = spin_operators(SpinQuantumNumber(4));
    const auto family = lmg(ops, 0.5, 3.14);
    CHECK(rel_gap(generator_fd(as_numeric_unitary(family, 1e-5)).h, generator_integral(family).h) <
          1e-5);
  }
}

TEST_CASE("evolution sign leaves QFI-relevant quantities unchanged") {
  // Explicit encodings: h flips sign exactly.
  const auto ops = spin_operators(SpinQuantumNumber(4));
  const ExplicitGenerator linear{ops.jx, 1.5};
  const auto lin_minus = generator_fd(as_numeric_unitary(linear, 0.3, 1e-5, EvolutionSign::negative)).h;
  const auto lin_plus = generator_fd(as_numeric_unitary(linear, 0.3, 1e-5, EvolutionSign::positive)).h;
  CHECK(rel_gap(lin_plus, -lin_minus) < 1e-8);

  // LMG is real in the J_z basis, so the flipped generator is -conj(h).
  for (int twice_j : {2, 4, 7}) {
    const auto spin = spin_operators(SpinQuantumNumber(twice_j));
    for (double lambda : {0.5, 1.0}) {
      const auto family = lmg(spin, lambda, 3.14);
      const auto minus = generator_fd(as_numeric_unitary(family, 1e-5, EvolutionSign::negative)).h;
      const auto plus = generator_fd(as_numeric_unitary(family, 1e-5, EvolutionSign::positive)).h;
      const HermitianOperator flipped(-minus.matrix().conjugate());
      CHECK(rel_gap(plus, flipped) < 1e-8);
      CHECK(((plus.matrix().cwiseAbs() - minus.matrix().cwiseAbs()).norm()) < 1e-8 * minus.matrix().norm());
      CHECK(seminorm(plus) == doctest::Approx(seminorm(minus)).epsilon(1e-8));
      const auto state = gibbs_state(spin.jz, 1.1);
      CHECK(qfi_general(state, plus) == doctest::Approx(qfi_general(state, minus)).epsilon(1e-8));
      CHECK(state.variance(plus) == doctest::Approx(state.variance(minus)).epsilon(1e-8));
    }
  }
}

TEST_CASE("||h|| <= t ||dH/dlambda||") {
  std::mt19937_64 rng(23);
  for (int k = 0; k < 100; ++k) {
    const auto h0 = testing::random_hermitian(rng, 5);
    const auto v = testing::random_hermitian(rng, 5);
    const double t = 0.1 + 0.03 * k;
    const HamiltonianFamily family{[h0, v](double l) { return h0 + l * v; }, v, 0.3, t};
    CHECK(seminorm(generator_integral(family).h) <= t * seminorm(v) * (1 + 1e-10));
  }
}

TEST_CASE("local generator dispatch") {
  const auto ops = spin_operators(SpinQuantumNumber(2));
  CHECK(local_generator(ExplicitGenerator{ops.jx, 1.0}).method == GeneratorMethod::explicit_form);
  CHECK(local_generator(lmg(ops, 1.0, 1.0)).method == GeneratorMethod::integral);
  CHECK(local_generator(as_numeric_unitary(lmg(ops, 1.0, 1.0), 1e-5)).method ==
        GeneratorMethod::finite_difference);
}
