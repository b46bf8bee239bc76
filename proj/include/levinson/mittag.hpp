#pragma once
// Mittag-Leffler kernel: symmetric partial sums of
//
//   (1/2 pi i) sum_{n=-N..N} (-1)^n z e^{i pi n alpha} / (z^2 - n^2),  |alpha| <= 1
//
// and the closed form cos(pi alpha z) / (e^{i pi z} - e^{-i pi z}). The +-n
// terms are paired before accumulation, which turns the conditionally
// convergent tail into O(1/n^2) terms for |alpha| < 1 and O(1/n) at the
// cotangent endpoints alpha = +-1. For |Im z| > 30 the closed form switches
// to a factored expression whose exponents all have nonpositive real part
// (e^{pi Im z} would overflow near Im z ~ 233 and the x-ray grids reach 140).

#include <cmath>
#include <complex>
#include <stdexcept>

#include "levinson/core.hpp"

namespace levinson::mittag {

struct MLKernelInput {
  Complex z;
  double alpha;
  long long n_terms;
};

inline void check_ml_args(const Complex& z, double alpha) {
  if (!(std::abs(alpha) <= 1.0))
    throw std::domain_error("mittag: |alpha| <= 1 required");
  const double nearest = std::round(z.real());
  if (std::abs(z - Complex(nearest, 0.0)) < 1e-9)
    throw std::domain_error("mittag: z within 1e-9 of an integer pole");
}

// cos(pi n alpha) with the angle reduced mod 2 in long double first.
inline double cos_pi_n_alpha(long long n, double alpha) {
  const long double r =
      std::fmod(static_cast<long double>(n) * static_cast<long double>(alpha), 2.0L);
  return static_cast<double>(cosl(kPiL * r));
}

inline Complex ml_partial(const MLKernelInput& in) {
  check_ml_args(in.z, in.alpha);
  if (in.n_terms < 0) throw std::invalid_argument("ml_partial: N must be >= 0");
  const Complex z = in.z;
  const Complex z2 = z * z;
  detail::ComplexAccumulator acc;
  acc.add(1.0 / z);
  for (long long n = 1; n <= in.n_terms; ++n) {
    const double sign = (n & 1) ? -1.0 : 1.0;
    acc.add(sign * 2.0 * cos_pi_n_alpha(n, in.alpha) * z /
            (z2 - static_cast<double>(n) * static_cast<double>(n)));
  }
  return acc.get() * Complex(0.0, -0.5 / kPi);  // 1/(2 pi i)
}

inline Complex ml_partial(const Complex& z, double alpha, long long n_terms) {
  return ml_partial(MLKernelInput{z, alpha, n_terms});
}

inline Complex ml_closed(const Complex& z, double alpha) {
  check_ml_args(z, alpha);
  if (z.imag() < 0.0) return -ml_closed(-z, alpha);  // odd in z
  if (z.imag() <= 30.0) {
    const Complex den = std::exp(Complex(0.0, kPi) * z) - std::exp(Complex(0.0, -kPi) * z);
    return std::cos(kPi * alpha * z) / den;
  }
  // Im z large: all exponents below have Re <= 0.
  const double ap = std::abs(alpha);
  const Complex e1 = std::exp(Complex(0.0, kPi) * z * (1.0 + ap));
  const Complex e2 = std::exp(Complex(0.0, kPi) * z * (1.0 - ap));
  const Complex q = std::exp(Complex(0.0, 2.0 * kPi) * z);
  return -0.5 * (e1 + e2) / (1.0 - q);
}

// Symmetric partial sum of the equivalent expansion
//   1/z + sum_{n != 0} (-1)^n cos(pi alpha n) (1/(z+n) - 1/n),
// which converges to pi cos(pi alpha z) / sin(pi z).
inline Complex ml_remark_lhs(const Complex& z, double alpha, long long n_terms) {
  check_ml_args(z, alpha);
  detail::ComplexAccumulator acc;
  acc.add(1.0 / z);
  for (long long n = 1; n <= n_terms; ++n) {
    const double nd = static_cast<double>(n);
    const double c = cos_pi_n_alpha(n, alpha) * ((n & 1) ? -1.0 : 1.0);
    acc.add(c * ((1.0 / (z + nd) - 1.0 / nd) + (1.0 / (z - nd) + 1.0 / nd)));
  }
  return acc.get();
}

}  // namespace levinson::mittag
