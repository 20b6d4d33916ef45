#include "thermoqfi/qfi_engine.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "thermoqfi/detail/compensated_sum.hpp"
#include "thermoqfi/errors.hpp"

namespace thermoqfi {

namespace {

using detail::CompensatedSum;

constexpr double kNegativeQfiTolerance = 1e-10;

void require_same_dim(Index probe_dim, const HermitianOperator& h, const char* where) {
  if (probe_dim != h.dim()) {
    throw PreconditionError(
        fmt::format("{}: probe has dimension {}, generator {}", where, probe_dim, h.dim()));
  }
}

double clamp_qfi(double f, const char* where) {
  if (f < -kNegativeQfiTolerance) {
    throw NumericalError(fmt::format("{}: QFI evaluated to {:.3e} < 0", where, f), -f);
  }
  return std::max(f, 0.0);
}

}  // namespace

double tanhc(double x) {
  if (std::abs(x) < 1e-5) {
    const double x2 = x * x;
    return 1.0 - x2 / 3.0 + 2.0 * x2 * x2 / 15.0;
  }
  return std::tanh(x) / x;
}

double qfi_general(const SpectralProbe& probe, const HermitianOperator& h) {
  require_same_dim(probe.dim(), h, "qfi_general");
  const RealVector& p = probe.probabilities;
  const Index d = probe.dim();
  const ComplexMatrix local = probe.eigenvectors.adjoint() * h.matrix() * probe.eigenvectors;
  const ComplexMatrix local_sq =
      probe.eigenvectors.adjoint() * h.squared().matrix() * probe.eigenvectors;

  CompensatedSum convex;
  for (Index i = 0; i < d; ++i) {
    const double mean = local(i, i).real();
    convex += 4.0 * p(i) * (local_sq(i, i).real() - mean * mean);
  }
  CompensatedSum coherence;
  for (Index i = 0; i < d; ++i) {
    for (Index j = 0; j < d; ++j) {
      const double total = p(i) + p(j);
      if (i == j || total < kSupportTolerance) continue;
      coherence += 8.0 * p(i) * p(j) / total * std::norm(local(i, j));
    }
  }
  return clamp_qfi(convex.value() - coherence.value(), "qfi_general");
}

double qfi_general(const GibbsState& state, const HermitianOperator& h) {
  return qfi_general(state.probe(), h);
}

double qfi_thermal(const GibbsState& state, const HermitianOperator& h) {
  require_same_dim(state.dim(), h, "qfi_thermal");
  const double beta = state.beta;
  const RealVector& p = state.probabilities;
  const RealVector& energy = state.decomposition.eigenvalues;
  const Index d = state.dim();

  const HermitianOperator c = commutator_i(state.hamiltonian, h);
  const ComplexMatrix local = state.decomposition.to_eigenbasis(c.matrix());

  CompensatedSum mean;
  CompensatedSum second_moment;
  for (Index i = 0; i < d; ++i) {
    mean += p(i) * local(i, i).real();
    for (Index j = 0; j < d; ++j) {
      second_moment += p(i) * std::norm(local(i, j));
    }
  }
  const double var = second_moment.value() - mean.value() * mean.value();

  // Ordered pairs, each weighted by its own exp(-beta E_i) / Z.
  CompensatedSum correction;
  for (Index i = 0; i < d; ++i) {
    for (Index j = 0; j < d; ++j) {
      if (i == j) continue;
      const double x = 0.5 * beta * (energy(i) - energy(j));
      const double th = tanhc(x);
      correction += p(i) * (1.0 - th * th) * std::norm(local(i, j));
    }
  }
  return clamp_qfi(beta * beta * (var - correction.value()), "qfi_thermal");
}

double qfi_sld(const SpectralProbe& probe, const HermitianOperator& h) {
  require_same_dim(probe.dim(), h, "qfi_sld");
  const RealVector& p = probe.probabilities;
  const Index d = probe.dim();
  const ComplexMatrix local = probe.eigenvectors.adjoint() * h.matrix() * probe.eigenvectors;

  CompensatedSum f;
  for (Index i = 0; i < d; ++i) {
    for (Index j = 0; j < d; ++j) {
      const double total = p(i) + p(j);
      if (total < kSupportTolerance) continue;
      const double diff = p(i) - p(j);
      f += 2.0 * diff * diff / total * std::norm(local(i, j));
    }
  }
  return clamp_qfi(f.value(), "qfi_sld");
}

double qfi_sld(const GibbsState& state, const HermitianOperator& h) {
  return qfi_sld(state.probe(), h);
}

double qfi_pure(const Eigen::VectorXcd& psi, const HermitianOperator& h) {
  require_same_dim(psi.size(), h, "qfi_pure");
  const double norm = psi.squaredNorm();
  if (std::abs(norm - 1.0) > 1e-10) {
    throw PreconditionError(fmt::format("qfi_pure: state norm^2 = {:.17g}", norm));
  }
  const Eigen::VectorXcd h_psi = h.matrix() * psi;
  const double mean = psi.dot(h_psi).real();
  return clamp_qfi(4.0 * (h_psi.squaredNorm() - mean * mean), "qfi_pure");
}

double agreement_gap(double a, double b) {
  return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)});
}

QfiReport qfi_report(const GibbsState& state, const HermitianOperator& h) {
  QfiReport report;
  report.f_general = qfi_general(state, h);
  report.f_thermal = qfi_thermal(state, h);
  report.f_sld = qfi_sld(state, h);
  report.max_pairwise_rel_diff = std::max({agreement_gap(report.f_general, report.f_thermal),
                                           agreement_gap(report.f_general, report.f_sld),
                                           agreement_gap(report.f_thermal, report.f_sld)});
  report.pure_state_flag = state.effectively_pure;
  return report;
}

}  // namespace thermoqfi
