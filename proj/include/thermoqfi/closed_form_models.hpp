#pragma once

// Analytic QFI and variance-bound formulas for a spin-J Gibbs probe
// rho_0 = exp(-beta J_z) / Z under
//   linear encoding  U = exp(-i lambda t J_axis)
//   one-axis twist   U = exp(-i lambda t J_x^2)
// Every formula carries its explicit t^2 factor. Hyperbolic ratios are
// evaluated in log form for large arguments and by power series near
// beta = 0, where the printed expressions cancel catastrophically.

#include "thermoqfi/spin_algebra.hpp"

namespace thermoqfi {

enum class SpinAxis { x, y, z };

struct LinearModelParams {
  SpinQuantumNumber j;
  double beta = 0.0;
  double t = 0.0;
  SpinAxis axis = SpinAxis::x;
};

struct OatModelParams {
  SpinQuantumNumber j;
  double beta = 0.0;
  double t = 0.0;
};

/// H_LMG = J_x^2 + lambda J_z. Numeric only; there is no closed form.
struct LmgModelParams {
  SpinQuantumNumber j;
  double beta = 0.0;
  double t = 0.0;
  double lambda = 0.0;
};

/// F = 2 t^2 tanh(b/2) [(J + 1/2) coth(b (J + 1/2)) - coth(b/2) / 2].
/// Zero for axis z and at beta = 0; x and y agree by symmetry about z.
double linear_qfi_closed(const LinearModelParams& p);

/// beta^2 t^2 Var[J_y] from the hyperbolic closed form.
double linear_variance_closed(const LinearModelParams& p);

/// beta^2 t^2 (J(J+1) - Z2/Z) / 2 from the partition sums.
double linear_variance_partition(const LinearModelParams& p);

/// Large-J estimate of Var[J_y]: ((2J+1) coth(b/2) - coth^2(b/2)) / 4.
double linear_variance_large_j(SpinQuantumNumber j, double beta);

/// t^2 (2J - 2(2J+1) / (1 + e^beta)). Meaningful for J >~ 10 and beta >= 1;
/// below beta = 1 it is outside its domain and can turn negative.
double large_j_linear_approx(SpinQuantumNumber j, double beta, double t);

/// eta(J, beta) = 3 - 4J(J+1) + csch(b(J+1/2)) [J(2J-1) sinh(b(J+3/2))
///                 + (J+1)(2J+3) sinh(b(J-1/2))].  eta = O(beta^4).
double oat_eta(SpinQuantumNumber j, double beta);

/// F = (t^2 / 2) coth^2(b/2) sech(b) eta.
double oat_qfi_closed(const OatModelParams& p);

/// beta^2 Var[i[J_z, t J_x^2]] = (1/8) b^2 t^2 cosh(b) csch^4(b/2) eta.
double oat_variance_closed(const OatModelParams& p);

/// 2 J^2, the classical range of J_x^2 - J_y^2 on a sphere of radius J.
double oat_seminorm_semiclassical(SpinQuantumNumber j);

}  // namespace thermoqfi
