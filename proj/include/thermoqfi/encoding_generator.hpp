#pragma once

// Parameter encodings U_lambda and the transformed local generator
// h = i U^dagger dU/dlambda.
//
// Canonical convention: U_lambda = exp(-i H_lambda t). Flipping the sign of
// the exponent flips h but leaves every QFI-relevant quantity unchanged.

#include <functional>
#include <variant>

#include "thermoqfi/operator_core.hpp"

namespace thermoqfi {

/// U_lambda = exp(-i lambda t A); h = t A.
struct ExplicitGenerator {
  HermitianOperator generator;
  double t = 0.0;
};

/// U_lambda = exp(-i H(lambda) t) with dH/dlambda independent of lambda.
struct HamiltonianFamily {
  std::function<HermitianOperator(double)> hamiltonian;
  HermitianOperator derivative;
  double lambda = 0.0;
  double t = 0.0;
};

/// U(lambda) supplied numerically; h is recovered by central differences.
struct NumericUnitary {
  std::function<UnitaryOperator(double)> unitary;
  double lambda = 0.0;
  double fd_step = 1e-5;
};

using EncodingScheme = std::variant<ExplicitGenerator, HamiltonianFamily, NumericUnitary>;

enum class GeneratorMethod { explicit_form, integral, finite_difference };

struct TransformedLocalGenerator {
  HermitianOperator h;
  GeneratorMethod method = GeneratorMethod::explicit_form;
};

enum class EvolutionSign { negative, positive };

/// kappa(gap, t) = int_0^t exp(i gap s) ds = (exp(i gap t) - 1) / (i gap).
/// Uses t (1 + i gap t / 2) when |gap| t < 1e-9.
Complex evolution_kernel(double gap, double t);

TransformedLocalGenerator generator_explicit(const HermitianOperator& a, double t);

/// h_mn = V_mn kappa(E_m - E_n, t) in the eigenbasis of H(lambda), with
/// V = dH/dlambda. Gaps below 1e-12 * ||H|| count as exact degeneracies.
TransformedLocalGenerator generator_integral(const HamiltonianFamily& family);

/// h ~ i U(lambda)^dagger (U(lambda + d) - U(lambda - d)) / (2 d), then
/// symmetrized; the anti-Hermitian residue is logged.
TransformedLocalGenerator generator_fd(const NumericUnitary& scheme);

/// Dispatches on the variant: explicit, integral or finite-difference.
TransformedLocalGenerator local_generator(const EncodingScheme& scheme);

/// exp(-/+ i H(lambda) t) as a function of lambda.
NumericUnitary as_numeric_unitary(const HamiltonianFamily& family, double fd_step,
                                  EvolutionSign sign = EvolutionSign::negative);
/// exp(-/+ i lambda t A) as a function of lambda, evaluated around `lambda`.
NumericUnitary as_numeric_unitary(const ExplicitGenerator& scheme, double lambda, double fd_step,
                                  EvolutionSign sign = EvolutionSign::negative);

}  // namespace thermoqfi
