#pragma once

// Dynamic quantum Fisher information of rho_lambda = U rho_0 U^dagger,
// computed from the transformed local generator h by three independent
// formulas:
//
//   general  F = sum_i 4 p_i Var[h]_{psi_i}
//                - sum_{i != j} 8 p_i p_j / (p_i + p_j) |h_ij|^2
//   thermal  F = beta^2 Var[C]_{rho_0}
//                - beta^2 sum_{i != j} p_i [1 - tanhc^2(beta (E_i - E_j) / 2)] |C_ij|^2,
//            C = i[H, h]   (Gibbs probes only)
//   SLD      F = sum_{i,j} 2 (p_i - p_j)^2 / (p_i + p_j) |h_ij|^2
//
// All matrix elements are taken in the probe eigenbasis.

#include "thermoqfi/operator_core.hpp"
#include "thermoqfi/thermal_ensemble.hpp"

namespace thermoqfi {

/// Pairs with p_i + p_j below this are outside the probe support.
inline constexpr double kSupportTolerance = 1e-14;

/// tanh(x) / x, with the series 1 - x^2/3 + 2x^4/15 for |x| < 1e-5.
double tanhc(double x);

double qfi_general(const SpectralProbe& probe, const HermitianOperator& h);
double qfi_general(const GibbsState& state, const HermitianOperator& h);

double qfi_thermal(const GibbsState& state, const HermitianOperator& h);

double qfi_sld(const SpectralProbe& probe, const HermitianOperator& h);
double qfi_sld(const GibbsState& state, const HermitianOperator& h);

/// 4 (<psi|h^2|psi> - <psi|h|psi>^2) for a normalized pure state.
double qfi_pure(const Eigen::VectorXcd& psi, const HermitianOperator& h);

struct QfiReport {
  double f_general = 0.0;
  double f_thermal = 0.0;
  double f_sld = 0.0;
  /// max over pairs of |a - b| / max(1, |a|, |b|).
  double max_pairwise_rel_diff = 0.0;
  bool pure_state_flag = false;
};

QfiReport qfi_report(const GibbsState& state, const HermitianOperator& h);

/// |a - b| / max(1, |a|, |b|).
double agreement_gap(double a, double b);

}  // namespace thermoqfi
