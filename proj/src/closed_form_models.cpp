#include "thermoqfi/closed_form_models.hpp"

#include <array>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "thermoqfi/errors.hpp"
#include "thermoqfi/thermal_ensemble.hpp"

namespace thermoqfi {

namespace {

// Arguments above this go through log-sinh/log-cosh.
constexpr double kDirectLimit = 30.0;
// Power series in beta are used while beta * (largest level offset) < 1.
constexpr double kSeriesLimit = 1.0;
constexpr int kSeriesTerms = 18;

void require_params(double beta, double t, const char* where) {
  if (!std::isfinite(beta) || beta < 0.0) {
    throw PreconditionError(fmt::format("{}: beta must be finite and >= 0, got {}", where, beta));
  }
  if (!std::isfinite(t) || t < 0.0) {
    throw PreconditionError(fmt::format("{}: t must be finite and >= 0, got {}", where, t));
  }
}

double log_sinh(double x) {
  if (x <= 0.0) return -std::numeric_limits<double>::infinity();
  if (x > 20.0) return x - std::log(2.0) + std::log1p(-std::exp(-2.0 * x));
  return std::log(std::sinh(x));
}

double log_cosh(double x) {
  x = std::abs(x);
  return x - std::log(2.0) + std::log1p(std::exp(-2.0 * x));
}

// x coth(x) - 1
double xcoth_minus_one(double x) {
  if (std::abs(x) < 1e-2) {
    const double x2 = x * x;
    return x2 * (1.0 / 3.0 + x2 * (-1.0 / 45.0 + x2 * (2.0 / 945.0 - x2 / 4725.0)));
  }
  return x / std::tanh(x) - 1.0;
}

// Coefficients c_k of sinh(b x) = sum_k c_k x^(2k+1) for k < kSeriesTerms.
std::array<long double, kSeriesTerms> sinh_coefficients(long double b) {
  std::array<long double, kSeriesTerms> c{};
  long double power = b;
  long double factorial = 1.0L;
  for (int k = 0; k < kSeriesTerms; ++k) {
    c[k] = power / factorial;
    power *= b * b;
    factorial *= static_cast<long double>((2 * k + 2) * (2 * k + 3));
  }
  return c;
}

// eta as a power series in beta^2; the constant term cancels exactly.
double oat_eta_series(double jj, double beta) {
  const long double j = jj;
  const long double wa = j * (2 * j - 1);
  const long double wc = (j + 1) * (2 * j + 3);
  const auto a = sinh_coefficients(j + 1.5L);
  const auto b = sinh_coefficients(j + 0.5L);
  const auto c = sinh_coefficients(j - 0.5L);

  // ratio r(x) = (wa sinh(a x) + wc sinh(c x)) / sinh(b x) = sum r_k x^2k
  std::array<long double, kSeriesTerms> r{};
  for (int k = 0; k < kSeriesTerms; ++k) {
    long double numerator = wa * a[k] + wc * c[k];
    for (int m = 0; m < k; ++m) numerator -= r[m] * b[k - m];
    r[k] = numerator / b[0];
  }
  const long double x2 = static_cast<long double>(beta) * beta;
  long double sum = 0.0L;
  long double power = x2;
  for (int k = 1; k < kSeriesTerms; ++k) {
    sum += r[k] * power;
    power *= x2;
  }
  return static_cast<double>(sum);
}

// (J+1) sinh(b J) - J sinh(b (J+1)) by its Taylor series (the linear term
// vanishes).
double linear_sinh_difference_series(double jj, double beta) {
  const auto lo = sinh_coefficients(jj);
  const auto hi = sinh_coefficients(jj + 1.0);
  const long double x = beta;
  const long double x2 = x * x;
  long double power = x * x2;
  long double sum = 0.0L;
  for (int k = 1; k < kSeriesTerms; ++k) {
    sum += ((jj + 1.0L) * lo[k] - jj * hi[k]) * power;
    power *= x2;
  }
  return static_cast<double>(sum);
}

}  // namespace

double linear_qfi_closed(const LinearModelParams& p) {
  require_params(p.beta, p.t, "linear_qfi_closed");
  if (p.axis == SpinAxis::z || p.beta == 0.0) return 0.0;
  const double j = p.j.j();
  // (J+1/2) coth(b(J+1/2)) - coth(b/2)/2 = [g(b(J+1/2)) - g(b/2)] / b,
  // g(x) = x coth x - 1.
  const double bracket =
      (xcoth_minus_one(p.beta * (j + 0.5)) - xcoth_minus_one(0.5 * p.beta)) / p.beta;
  return 2.0 * p.t * p.t * std::tanh(0.5 * p.beta) * bracket;
}

double linear_variance_closed(const LinearModelParams& p) {
  require_params(p.beta, p.t, "linear_variance_closed");
  if (p.axis == SpinAxis::z || p.beta == 0.0) return 0.0;
  const double j = p.j.j();
  const double b = p.beta;
  const double prefactor = b * b * p.t * p.t / 8.0;

  if (b * (j + 1.0) < kSeriesLimit) {
    const double diff = linear_sinh_difference_series(j, b);
    return -prefactor * std::sinh(b) / std::pow(std::sinh(0.5 * b), 3) * diff /
           std::sinh(b * (j + 0.5));
  }
  if (b * (j + 1.0) <= kDirectLimit) {
    const double diff = (j + 1.0) * std::sinh(b * j) - j * std::sinh(b * (j + 1.0));
    return -prefactor * std::sinh(b) / std::pow(std::sinh(0.5 * b), 3) * diff /
           std::sinh(b * (j + 0.5));
  }
  // sinh(b) csch^3(b/2) = 2 cosh(b/2) csch^2(b/2)
  const double shared = std::log(2.0) + log_cosh(0.5 * b) - 2.0 * log_sinh(0.5 * b) -
                        log_sinh(b * (j + 0.5));
  const double low = (j + 1.0) * std::exp(shared + log_sinh(b * j));
  const double high = j * std::exp(shared + log_sinh(b * (j + 1.0)));
  return prefactor * (high - low);
}

double linear_variance_partition(const LinearModelParams& p) {
  require_params(p.beta, p.t, "linear_variance_partition");
  if (p.axis == SpinAxis::z) return 0.0;
  const double j = p.j.j();
  const PartitionMoments moments = partition_moments(p.j, p.beta);
  const double var = 0.5 * (j * (j + 1.0) - moments.z2_over_z());
  return p.beta * p.beta * p.t * p.t * var;
}

double linear_variance_large_j(SpinQuantumNumber j, double beta) {
  require_params(beta, 0.0, "linear_variance_large_j");
  const double coth = 1.0 / std::tanh(0.5 * beta);
  return 0.25 * (2.0 * j.j() + 1.0) * coth - 0.25 * coth * coth;
}

double large_j_linear_approx(SpinQuantumNumber j, double beta, double t) {
  require_params(beta, t, "large_j_linear_approx");
  const double jj = j.j();
  // 1 / (1 + e^b) written to stay finite for any beta.
  const double fermi = std::exp(-beta) / (1.0 + std::exp(-beta));
  return t * t * (2.0 * jj - 2.0 * (2.0 * jj + 1.0) * fermi);
}

double oat_eta(SpinQuantumNumber j, double beta) {
  require_params(beta, 0.0, "oat_eta");
  const double jj = j.j();
  if (beta == 0.0 || j.twice_j() == 1) return 0.0;
  if (beta * (jj + 1.5) < kSeriesLimit) return oat_eta_series(jj, beta);
  const double lb = log_sinh(beta * (jj + 0.5));
  const double upper = jj * (2.0 * jj - 1.0) * std::exp(log_sinh(beta * (jj + 1.5)) - lb);
  const double lower = (jj + 1.0) * (2.0 * jj + 3.0) * std::exp(log_sinh(beta * (jj - 0.5)) - lb);
  return 3.0 - 4.0 * jj * (jj + 1.0) + upper + lower;
}

double oat_qfi_closed(const OatModelParams& p) {
  require_params(p.beta, p.t, "oat_qfi_closed");
  if (p.beta == 0.0 || p.j.twice_j() == 1) return 0.0;
  const double jj = p.j.j();
  const double b = p.beta;
  const double coth_half = 1.0 / std::tanh(0.5 * b);
  const double front = 0.5 * p.t * p.t * coth_half * coth_half;
  if (b * (jj + 1.5) <= kDirectLimit) {
    return front * oat_eta(p.j, b) / std::cosh(b);
  }
  // sech(b) eta, term by term.
  const double lc = log_cosh(b);
  const double lb = log_sinh(b * (jj + 0.5));
  const double constant = (3.0 - 4.0 * jj * (jj + 1.0)) * std::exp(-lc);
  const double upper = jj * (2.0 * jj - 1.0) * std::exp(log_sinh(b * (jj + 1.5)) - lb - lc);
  const double lower =
      (jj + 1.0) * (2.0 * jj + 3.0) * std::exp(log_sinh(b * (jj - 0.5)) - lb - lc);
  return front * (constant + upper + lower);
}

double oat_variance_closed(const OatModelParams& p) {
  require_params(p.beta, p.t, "oat_variance_closed");
  if (p.beta == 0.0 || p.j.twice_j() == 1) return 0.0;
  const double jj = p.j.j();
  const double b = p.beta;
  const double front = 0.125 * b * b * p.t * p.t;
  if (b * (jj + 1.5) <= kDirectLimit) {
    return front * std::cosh(b) / std::pow(std::sinh(0.5 * b), 4) * oat_eta(p.j, b);
  }
  // cosh(b) csch^4(b/2) eta, term by term.
  const double scale = log_cosh(b) - 4.0 * log_sinh(0.5 * b);
  const double lb = log_sinh(b * (jj + 0.5));
  const double constant = (3.0 - 4.0 * jj * (jj + 1.0)) * std::exp(scale);
  const double upper = jj * (2.0 * jj - 1.0) * std::exp(log_sinh(b * (jj + 1.5)) - lb + scale);
  const double lower =
      (jj + 1.0) * (2.0 * jj + 3.0) * std::exp(log_sinh(b * (jj - 0.5)) - lb + scale);
  return front * (constant + upper + lower);
}

double oat_seminorm_semiclassical(SpinQuantumNumber j) {
  const double jj = j.j();
  return 2.0 * jj * jj;
}

}  // namespace thermoqfi
