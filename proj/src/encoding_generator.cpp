#include "thermoqfi/encoding_generator.hpp"

#include <cmath>

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include "thermoqfi/errors.hpp"

namespace thermoqfi {

namespace {

void require_valid_time(double t, const char* where) {
  if (!std::isfinite(t) || t < 0.0) {
    throw PreconditionError(fmt::format("{}: evolution time must be finite and >= 0, got {}", where, t));
  }
}

void require_valid_step(double step) {
  if (!(step > 0.0 && step <= 1e-2)) {
    throw PreconditionError(fmt::format("generator_fd: fd_step must lie in (0, 1e-2], got {}", step));
  }
}

double sign_factor(EvolutionSign sign) { return sign == EvolutionSign::negative ? -1.0 : 1.0; }

}  // namespace

Complex evolution_kernel(double gap, double t) {
  if (gap == 0.0) {
    return {t, 0.0};
  }
  const double phase = gap * t;
  if (std::abs(phase) < 1e-9) {
    return {t, 0.5 * phase * t};
  }
  const double half = std::sin(0.5 * phase);
  return {std::sin(phase) / gap, 2.0 * half * half / gap};
}

TransformedLocalGenerator generator_explicit(const HermitianOperator& a, double t) {
  require_valid_time(t, "generator_explicit");
  return {a.scaled(t), GeneratorMethod::explicit_form};
}

TransformedLocalGenerator generator_integral(const HamiltonianFamily& family) {
  require_valid_time(family.t, "generator_integral");
  if (!family.hamiltonian) {
    throw PreconditionError("generator_integral: Hamiltonian family has no evaluator");
  }
  const HermitianOperator h_lambda = family.hamiltonian(family.lambda);
  if (h_lambda.dim() != family.derivative.dim()) {
    throw PreconditionError("generator_integral: H(lambda) and dH/dlambda differ in dimension");
  }
  const SpectralDecomposition spectrum = eigendecompose(h_lambda);
  const double degeneracy = 1e-12 * seminorm(spectrum);

  ComplexMatrix local = spectrum.to_eigenbasis(family.derivative.matrix());
  for (Index m = 0; m < local.rows(); ++m) {
    for (Index n = 0; n < local.cols(); ++n) {
      double gap = spectrum.eigenvalues(m) - spectrum.eigenvalues(n);
      if (std::abs(gap) <= degeneracy) gap = 0.0;
      local(m, n) *= evolution_kernel(gap, family.t);
    }
  }
  return {HermitianOperator::symmetrized(spectrum.from_eigenbasis(local), "generator_integral"),
          GeneratorMethod::integral};
}

TransformedLocalGenerator generator_fd(const NumericUnitary& scheme) {
  require_valid_step(scheme.fd_step);
  if (!scheme.unitary) {
    throw PreconditionError("generator_fd: no unitary evaluator");
  }
  const double step = scheme.fd_step;
  const UnitaryOperator centre = scheme.unitary(scheme.lambda);
  const UnitaryOperator forward = scheme.unitary(scheme.lambda + step);
  const UnitaryOperator backward = scheme.unitary(scheme.lambda - step);
  if (forward.dim() != centre.dim() || backward.dim() != centre.dim()) {
    throw PreconditionError("generator_fd: evaluator changed dimension between samples");
  }

  const ComplexMatrix derivative = (forward.matrix() - backward.matrix()) / (2.0 * step);
  const ComplexMatrix raw = Complex{0.0, 1.0} * (centre.matrix().adjoint() * derivative);
  // The central stencil leaves an O(step^2) anti-Hermitian residue.
  const double expected = 10.0 * step * step + kHermiticityTolerance;
  spdlog::debug("generator_fd: anti-Hermitian residue {:.3e} at step {:.1e}",
                0.5 * hermiticity_defect(raw), step);
  return {HermitianOperator::symmetrized(raw, "generator_fd", expected),
          GeneratorMethod::finite_difference};
}

TransformedLocalGenerator local_generator(const EncodingScheme& scheme) {
  return std::visit(
      [](const auto& s) -> TransformedLocalGenerator {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, ExplicitGenerator>) {
          return generator_explicit(s.generator, s.t);
        } else if constexpr (std::is_same_v<T, HamiltonianFamily>) {
          return generator_integral(s);
        } else {
          return generator_fd(s);
        }
      },
      scheme);
}

NumericUnitary as_numeric_unitary(const HamiltonianFamily& family, double fd_step,
                                  EvolutionSign sign) {
  require_valid_time(family.t, "as_numeric_unitary");
  const double t = sign_factor(sign) * family.t;
  auto evaluator = [hamiltonian = family.hamiltonian, t](double lambda) {
    return UnitaryOperator(matrix_exp_scaled(hamiltonian(lambda), Complex{0.0, t}));
  };
  return NumericUnitary{std::move(evaluator), family.lambda, fd_step};
}

NumericUnitary as_numeric_unitary(const ExplicitGenerator& scheme, double lambda, double fd_step,
                                  EvolutionSign sign) {
  require_valid_time(scheme.t, "as_numeric_unitary");
  const double t = sign_factor(sign) * scheme.t;
  auto evaluator = [spectrum = eigendecompose(scheme.generator), t](double value) {
    return UnitaryOperator(matrix_exp_scaled(spectrum, Complex{0.0, t * value}));
  };
  return NumericUnitary{std::move(evaluator), lambda, fd_step};
}

}  // namespace thermoqfi
