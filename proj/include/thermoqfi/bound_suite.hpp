#pragma once

// Upper bounds on the dynamic QFI of a Gibbs probe and the ordering checks
// between them:
//
//   F <= beta^2 Var[C] <= beta^2 ||C||^2 / 4 <= beta^2 t^2 ||H||^2 ||dH||^2 / 4
//   F <= sum_i 4 p_i Var[h]_{psi_i},  F <= 4 Var[C] / gap^2 <= ||C||^2 / gap^2
//
// with C = i[H, h] and ||.|| the spectral width.

#include <optional>

#include "thermoqfi/encoding_generator.hpp"
#include "thermoqfi/qfi_engine.hpp"
#include "thermoqfi/thermal_ensemble.hpp"

namespace thermoqfi {

/// Relative slack used by every ordering check: a <= b + 1e-9 max(1, b).
inline constexpr double kOrderingSlack = 1e-9;

bool within_bound(double value, double bound) noexcept;

double variance_bound(const GibbsState& state, const HermitianOperator& h);
double seminorm_bound(const GibbsState& state, const HermitianOperator& h);

double product_bound(const HermitianOperator& hamiltonian, const HermitianOperator& derivative,
                     double beta, double t);
/// Throws UnsupportedEncodingError for NumericUnitary encodings.
double product_bound(const GibbsState& state, const EncodingScheme& encoding);

/// Smallest |E_i - E_j| above 1e-9 * ||H||. Throws PreconditionError if
/// every level is degenerate.
double minimum_gap(const SpectralDecomposition& spectrum);

struct GapBounds {
  double convexity_bound = 0.0;
  double gap_variance_bound = 0.0;
  double gap_seminorm_bound = 0.0;
  double min_gap = 0.0;
};

GapBounds gap_bounds(const GibbsState& state, const HermitianOperator& h);

/// c = ||i[H, h]||.
double noncommutativity(const HermitianOperator& hamiltonian, const HermitianOperator& h);

struct Scenario {
  GibbsState probe;
  EncodingScheme encoding;
};

struct BoundReport {
  double f = 0.0;
  QfiReport qfi;
  double variance_bound = 0.0;
  double seminorm_bound = 0.0;
  std::optional<double> product_bound;
  double convexity_bound = 0.0;
  double gap_variance_bound = 0.0;
  double gap_seminorm_bound = 0.0;
  double min_gap = 0.0;
  double noncommutativity = 0.0;
  /// F below every bound, and variance <= seminorm (<= product) and
  /// gap_variance <= gap_seminorm.
  bool ordering_ok = false;
  /// convexity_bound <= gap_variance_bound. Not part of ordering_ok: it can
  /// fail when H has degenerate levels that h couples.
  bool convexity_below_gap_variance = false;
};

BoundReport bound_report(const Scenario& scenario);
BoundReport bound_report(const GibbsState& probe, const EncodingScheme& encoding);

/// Re-derives ordering_ok from the numeric fields.
bool ordering_holds(const BoundReport& report) noexcept;

}  // namespace thermoqfi
