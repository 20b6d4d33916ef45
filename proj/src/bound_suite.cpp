#include "thermoqfi/bound_suite.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "thermoqfi/detail/compensated_sum.hpp"
#include "thermoqfi/errors.hpp"

namespace thermoqfi {

namespace {

double gibbs_variance_bound(const GibbsState& state, const HermitianOperator& c) {
  return state.beta * state.beta * state.variance(c);
}

double gibbs_seminorm_bound(const GibbsState& state, const HermitianOperator& c) {
  const double width = seminorm(c);
  return 0.25 * state.beta * state.beta * width * width;
}

double convexity_sum(const GibbsState& state, const HermitianOperator& h) {
  const ComplexMatrix local = state.decomposition.to_eigenbasis(h.matrix());
  detail::CompensatedSum sum;
  for (Index i = 0; i < state.dim(); ++i) {
    // Var[h]_{psi_i} = sum_{j != i} |h_ij|^2
    double off_diagonal = 0.0;
    for (Index j = 0; j < state.dim(); ++j) {
      if (j != i) off_diagonal += std::norm(local(i, j));
    }
    sum += 4.0 * state.probabilities(i) * off_diagonal;
  }
  return sum.value();
}

GapBounds gibbs_gap_bounds(const GibbsState& state, const HermitianOperator& h,
                           const HermitianOperator& c) {
  GapBounds out;
  out.min_gap = minimum_gap(state.decomposition);
  const double gap_sq = out.min_gap * out.min_gap;
  const double width = seminorm(c);
  out.convexity_bound = convexity_sum(state, h);
  out.gap_variance_bound = 4.0 * state.variance(c) / gap_sq;
  out.gap_seminorm_bound = width * width / gap_sq;
  return out;
}

struct DerivativeData {
  const HermitianOperator* derivative;
  double t;
};

std::optional<DerivativeData> encoding_derivative(const EncodingScheme& encoding) {
  if (const auto* e = std::get_if<ExplicitGenerator>(&encoding)) {
    return DerivativeData{&e->generator, e->t};
  }
  if (const auto* f = std::get_if<HamiltonianFamily>(&encoding)) {
    return DerivativeData{&f->derivative, f->t};
  }
  return std::nullopt;
}

}  // namespace

bool within_bound(double value, double bound) noexcept {
  return value <= bound + kOrderingSlack * std::max(1.0, std::abs(bound));
}

double variance_bound(const GibbsState& state, const HermitianOperator& h) {
  return gibbs_variance_bound(state, commutator_i(state.hamiltonian, h));
}

double seminorm_bound(const GibbsState& state, const HermitianOperator& h) {
  return gibbs_seminorm_bound(state, commutator_i(state.hamiltonian, h));
}

double product_bound(const HermitianOperator& hamiltonian, const HermitianOperator& derivative,
                     double beta, double t) {
  const double h_width = seminorm(hamiltonian);
  const double d_width = seminorm(derivative);
  return 0.25 * beta * beta * t * t * h_width * h_width * d_width * d_width;
}

double product_bound(const GibbsState& state, const EncodingScheme& encoding) {
  const auto data = encoding_derivative(encoding);
  if (!data) {
    throw UnsupportedEncodingError(
        "product_bound: needs dH/dlambda, unavailable for a numeric unitary encoding");
  }
  return product_bound(state.hamiltonian, *data->derivative, state.beta, data->t);
}

double minimum_gap(const SpectralDecomposition& spectrum) {
  const double threshold = 1e-9 * seminorm(spectrum);
  double gap = std::numeric_limits<double>::infinity();
  // Eigenvalues are sorted, so the minimum non-degenerate gap is between
  // neighbouring distinct levels.
  for (Index k = 0; k + 1 < spectrum.dim(); ++k) {
    const double step = spectrum.eigenvalues(k + 1) - spectrum.eigenvalues(k);
    if (step > threshold) gap = std::min(gap, step);
  }
  if (!std::isfinite(gap) || gap <= 0.0) {
    throw PreconditionError("minimum_gap: Hamiltonian has a single (fully degenerate) level");
  }
  return gap;
}

GapBounds gap_bounds(const GibbsState& state, const HermitianOperator& h) {
  return gibbs_gap_bounds(state, h, commutator_i(state.hamiltonian, h));
}

double noncommutativity(const HermitianOperator& hamiltonian, const HermitianOperator& h) {
  return seminorm(commutator_i(hamiltonian, h));
}

bool ordering_holds(const BoundReport& r) noexcept {
  bool ok = within_bound(r.f, r.variance_bound) && within_bound(r.f, r.seminorm_bound) &&
            within_bound(r.f, r.convexity_bound) && within_bound(r.f, r.gap_variance_bound) &&
            within_bound(r.f, r.gap_seminorm_bound) &&
            within_bound(r.variance_bound, r.seminorm_bound) &&
            within_bound(r.gap_variance_bound, r.gap_seminorm_bound);
  if (r.product_bound) {
    ok = ok && within_bound(r.f, *r.product_bound) &&
         within_bound(r.seminorm_bound, *r.product_bound);
  }
  return ok;
}

BoundReport bound_report(const GibbsState& probe, const EncodingScheme& encoding) {
  const TransformedLocalGenerator generator = local_generator(encoding);
  const HermitianOperator& h = generator.h;
  const HermitianOperator c = commutator_i(probe.hamiltonian, h);

  BoundReport r;
  r.qfi = qfi_report(probe, h);
  r.f = r.qfi.f_general;
  r.variance_bound = gibbs_variance_bound(probe, c);
  r.seminorm_bound = gibbs_seminorm_bound(probe, c);
  if (encoding_derivative(encoding)) {
    r.product_bound = product_bound(probe, encoding);
  }
  const GapBounds gaps = gibbs_gap_bounds(probe, h, c);
  r.convexity_bound = gaps.convexity_bound;
  r.gap_variance_bound = gaps.gap_variance_bound;
  r.gap_seminorm_bound = gaps.gap_seminorm_bound;
  r.min_gap = gaps.min_gap;
  r.noncommutativity = seminorm(c);
  r.ordering_ok = ordering_holds(r);
  r.convexity_below_gap_variance = within_bound(r.convexity_bound, r.gap_variance_bound);
  return r;
}

BoundReport bound_report(const Scenario& scenario) {
  return bound_report(scenario.probe, scenario.encoding);
}

}  // namespace thermoqfi
