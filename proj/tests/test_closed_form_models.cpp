#include "doctest.h"
#include "thermoqfi/bound_suite.hpp"
#include "thermoqfi/closed_form_models.hpp"
#include "thermoqfi/spin_algebra.hpp"

#include <cmath>

using namespace thermoqfi;

namespace {

double pipeline_f(const HermitianOperator& probe_h, const HermitianOperator& a, double beta, double t) {
  return qfi_general(gibbs_state(probe_h, beta), a.scaled(t));
}

double pipeline_var(const HermitianOperator& probe_h, const HermitianOperator& a, double beta,
                    double t) {
  return variance_bound(gibbs_state(probe_h, beta), a.scaled(t));
}

}  // namespace

TEST_CASE("linear QFI closed form") {
  const SpinQuantumNumber half(1);
  CHECK(linear_qfi_closed({half, 2.0, 1.0}) == doctest::Approx(std::pow(std::tanh(1.0), 2)).epsilon(1e-14));
  CHECK(linear_qfi_closed({half, 0.0, 1.0}) == 0.0);
  CHECK(linear_qfi_closed({SpinQuantumNumber(6), 1.0, 1.0, SpinAxis::z}) == 0.0);
  CHECK(linear_qfi_closed({SpinQuantumNumber(6), 1e-6, 1.0}) < 1e-10);
  for (int twice_j = 1; twice_j <= 12; ++twice_j) {
    const SpinQuantumNumber j(twice_j);
    const auto ops = spin_operators(j);
    for (double beta : {0.01, 0.7, 3.0, 40.0}) {
      CHECK(linear_qfi_closed({j, beta, 1.3}) ==
            doctest::Approx(pipeline_f(ops.jz, ops.jx, beta, 1.3)).epsilon(1e-10));
      CHECK(linear_qfi_closed({j, beta, 1.3, SpinAxis::y}) ==
            doctest::Approx(pipeline_f(ops.jz, ops.jy, beta, 1.3)).epsilon(1e-10));
    }
  }
}

TEST_CASE("standard quantum limit") {
  const SpinQuantumNumber j(100);
  CHECK(linear_qfi_closed({j, 20.0, 1.0}) == doctest::Approx(large_j_linear_approx(j, 20.0, 1.0)).epsilon(1e-3));
  CHECK(linear_qfi_closed({j, 200.0, 1.0}) == doctest::Approx(100.0).epsilon(1e-12));
  CHECK(linear_qfi_closed({j, 200.0, 2.0}) == doctest::Approx(400.0).epsilon(1e-12));
  // outside its domain the approximation is returned raw
  CHECK(large_j_linear_approx(j, 0.0, 1.0) < 0.0);
}

TEST_CASE("linear variance bound closed form") {
  const SpinQuantumNumber half(1);
  for (double beta : {0.1, 1.0, 4.0}) {
    CHECK(linear_variance_closed({half, beta, 1.0}) == doctest::Approx(beta * beta / 4).epsilon(1e-12));
  }
  for (int twice_j = 1; twice_j <= 16; ++twice_j) {
    const SpinQuantumNumber j(twice_j);
    const auto ops = spin_operators(j);
    for (double beta : {1e-4, 0.05, 0.9, 5.0, 35.0, 300.0}) {
      const double numeric = pipeline_var(ops.jz, ops.jx, beta, 0.8);
      CHECK(linear_variance_closed({j, beta, 0.8}) == doctest::Approx(numeric).epsilon(1e-9));
      CHECK(linear_variance_partition({j, beta, 0.8}) == doctest::Approx(numeric).epsilon(1e-9));
    }
  }
  // beta -> 0: beta^2 t^2 J(J+1)/3
  const SpinQuantumNumber ten(20);
  const double small = linear_variance_closed({ten, 1e-3, 1.0});
  CHECK(small == doctest::Approx(1e-6 * 110.0 / 3).epsilon(1e-5));
}

TEST_CASE("large-J variance asymptote") {
  const SpinQuantumNumber j(200);
  const auto ops = spin_operators(j);
  const double exact = gibbs_state(ops.jz, 1.0).variance(ops.jy);
  CHECK(linear_variance_large_j(j, 1.0) == doctest::Approx(exact).epsilon(1e-2));
}

TEST_CASE("OAT closed forms") {
  const SpinQuantumNumber half(1);
  CHECK(oat_eta(half, 1.0) == 0.0);
  CHECK(oat_qfi_closed({half, 1.0, 1.0}) == 0.0);
  CHECK(oat_variance_closed({half, 1.0, 1.0}) == 0.0);
  for (int twice_j = 2; twice_j <= 12; ++twice_j) {
    const SpinQuantumNumber j(twice_j);
    CHECK(std::abs(oat_eta(j, 0.0)) < 1e-12);
    CHECK(oat_qfi_closed({j, 1e-3, 1.0}) < 1e-3);
  }
  const auto three = spin_operators(SpinQuantumNumber(6));
  CHECK(oat_qfi_closed({SpinQuantumNumber(6), 1.0, 1.0}) ==
        doctest::Approx(pipeline_f(three.jz, three.jx.squared(), 1.0, 1.0)).epsilon(1e-10));
  const auto two = spin_operators(SpinQuantumNumber(4));
  CHECK(oat_variance_closed({SpinQuantumNumber(4), 1.5, 1.0}) ==
        doctest::Approx(pipeline_var(two.jz, two.jx.squared(), 1.5, 1.0)).epsilon(1e-10));
  const double f1 = oat_variance_closed({SpinQuantumNumber(7), 0.8, 1.0});
  CHECK(oat_variance_closed({SpinQuantumNumber(7), 0.8, 2.5}) == doctest::Approx(6.25 * f1).epsilon(1e-13));
}

TEST_CASE("closed-form branches join continuously") {
  // series near beta = 0 and the log path at large beta
  for (int twice_j : {2, 5, 10, 30}) {
    const SpinQuantumNumber j(twice_j);
    for (double beta : {0.999 / j.j(), 1.001 / j.j(), 29.999, 30.001}) {
      const double lo = oat_variance_closed({j, beta * (1 - 1e-9), 1.0});
      const double hi = oat_variance_closed({j, beta * (1 + 1e-9), 1.0});
      CHECK(lo == doctest::Approx(hi).epsilon(1e-7));
      const double a = linear_variance_closed({j, beta * (1 - 1e-9), 1.0});
      const double b = linear_variance_closed({j, beta * (1 + 1e-9), 1.0});
      CHECK(a == doctest::Approx(b).epsilon(1e-7));
      const double p = oat_qfi_closed({j, beta * (1 - 1e-9), 1.0});
      const double q = oat_qfi_closed({j, beta * (1 + 1e-9), 1.0});
      CHECK(p == doctest::Approx(q).epsilon(1e-7));
    }
  }
}

TEST_CASE("semiclassical seminorm estimate") {
  CHECK(oat_seminorm_semiclassical(SpinQuantumNumber(2)) == 2.0);
  CHECK(oat_seminorm_semiclassical(SpinQuantumNumber(3)) == 4.5);
  CHECK(seminorm(oat_commutator(SpinQuantumNumber(3))) / oat_seminorm_semiclassical(SpinQuantumNumber(3)) ==
        doctest::Approx(0.7698).epsilon(1e-4));
}
