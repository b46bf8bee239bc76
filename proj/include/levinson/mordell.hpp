#pragma once
// The Mordell integral
//
//   Phi(z, tau) = int_{0 up 1} e^{-pi i tau x^2 + 2 pi i z x} / (e^{pi i x} - e^{-pi i x}) dx
//
// along the ascending line through 1/2 with direction 3 pi/4 - arg(tau)/2
// (the reversal of the Levinson decay rule keeps Re(-pi i tau x^2) -> -inf
// with increasing imaginary part). Quasi-periodicity in z and z + tau, the
// tau -> -1/tau law, the rational closed forms, and the cosh-kernel
// companion integral h(z,tau) used as an independent oracle.
//
// sqrt(-i tau) is the continuous determination equal to e^{-i pi/4} sqrt(tau)
// for tau > 0.

#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>

#include "levinson/core.hpp"
#include "levinson/gauss_fourier.hpp"
#include "levinson/quad.hpp"

namespace levinson::mordell {

struct MordellInput {
  Complex z;
  Complex tau;  // tau != 0; principal argument convention recorded here
};

inline Complex sqrt_minus_i_tau(const Complex& tau) {
  if (tau == Complex(0.0, 0.0)) throw std::domain_error("sqrt_minus_i_tau: tau must be nonzero");
  const double alpha = std::arg(tau);
  return std::polar(std::sqrt(std::abs(tau)), 0.5 * (alpha - 0.5 * kPi));
}

struct PhiOptions {
  double tol = 1e-12;
  double direction_override = std::numeric_limits<double>::quiet_NaN();
  int panels_override = 0;
  int nodes_per_panel = 16;
  bool enforce_range = true;  // documented box |z| <= 5, 0.05 <= |tau| <= 20
};

inline quad::QuadResult phi(const Complex& z, const Complex& tau, const PhiOptions& o = {}) {
  if (tau == Complex(0.0, 0.0)) throw std::domain_error("phi: tau must be nonzero");
  if (o.enforce_range &&
      (std::abs(z) > 5.0 || std::abs(tau) < 0.05 || std::abs(tau) > 20.0))
    throw std::domain_error("phi: outside the documented range |z| <= 5, 0.05 <= |tau| <= 20");
  const double alpha = std::arg(tau);
  double theta = std::isnan(o.direction_override) ? 0.75 * kPi - 0.5 * alpha
                                                  : o.direction_override;
  if (std::isnan(o.direction_override)) {
    // keep every node > 0.25 away from the integer poles: |sin theta| >= 0.5
    const double lo = kPi / 6.0 + 0.02, hi = 5.0 * kPi / 6.0 - 0.02;
    theta = std::min(hi, std::max(lo, theta));
  }
  const double c = -kPi * std::abs(tau) * std::sin(alpha + 2.0 * theta);
  if (!(c > 0.05 * kPi * std::abs(tau)))
    throw std::runtime_error("phi: no quadratic decay along the admissible contour band "
                             "(arg tau too far from the upper half-plane)");
  const double drift = kPi * std::abs(z) / c;  // peak shift from e^{2 pi i z x}
  const double U = quad::auto_truncate(c, o.tol) + 1.5 * drift + 1.0;
  quad::ContourSpec spec;
  spec.anchor = Complex(0.5, 0.0);
  spec.direction_angle = theta;
  spec.half_length = U;
  spec.panels = o.panels_override > 0
                    ? o.panels_override
                    : 24 * std::max(1, static_cast<int>(std::ceil(U / 3.5)));
  spec.nodes_per_panel = o.nodes_per_panel;
  spec.integer_pole_guard = true;
  auto integrand = [&](Complex x) {
    return std::exp(Complex(0.0, -kPi) * tau * x * x + Complex(0.0, 2.0 * kPi) * z * x) /
           (std::exp(Complex(0.0, kPi) * x) - std::exp(Complex(0.0, -kPi) * x));
  };
  return quad::integrate_line(integrand, spec);
}

namespace detail_mord {

inline void check_prefactor(const Complex& pre) {
  if (std::abs(pre) < 1e-8)
    throw std::domain_error(
        "phi_rational: prefactor 1 - (-1)^{b(a+1)} e^{-2 pi i b z} vanishes (removable "
        "singularity); perturb z");
}

}  // namespace detail_mord

// Closed form for Phi(z, a/b), a, b >= 1:
//   (1 - (-1)^{b(a+1)} e^{-2 pi i b z}) Phi = sum_{n<b} (-1)^n e^{-2 pi i n z - pi i n^2 a/b}
//     + (-1)^{b(a+1)} e^{-2 pi i b z} (e^{3 pi i/4} / sqrt(a/b))
//         sum_{m<a} e^{(pi i b/a)(z+m+1/2)^2}
inline Complex phi_rational_pos(const Complex& z, long long a, long long b) {
  if (a < 1 || b < 1) throw std::domain_error("phi_rational_pos: a, b must be >= 1");
  const double sign = (((b * (a + 1)) % 2) == 0) ? 1.0 : -1.0;
  const Complex ez = std::exp(Complex(0.0, -2.0 * kPi) * static_cast<double>(b) * z);
  const Complex pre = 1.0 - sign * ez;
  detail_mord::check_prefactor(pre);
  gauss::PiRootTable root(b);
  detail::ComplexAccumulator s1;
  for (long long n = 0; n < b; ++n) {
    const double pn = (n & 1) ? -1.0 : 1.0;
    s1.add(pn * std::exp(Complex(0.0, -2.0 * kPi) * static_cast<double>(n) * z) *
           root(-detail::floor_mod(a * ((n * n) % (2 * b)), 2 * b)));
  }
  detail::ComplexAccumulator s2;
  const double boa = static_cast<double>(b) / static_cast<double>(a);
  for (long long m = 0; m < a; ++m) {
    const Complex w = z + static_cast<double>(m) + 0.5;
    s2.add(std::exp(Complex(0.0, kPi) * boa * w * w));
  }
  const Complex tail =
      sign * ez * std::polar(1.0, 0.75 * kPi) /
      std::sqrt(static_cast<double>(a) / static_cast<double>(b)) * s2.get();
  return (s1.get() + tail) / pre;
}

// Closed form for Phi(z, -a/b); the m-sum runs 1..a (derived by eliminating
// Phi(z-a) between the two quasi-periodicity relations).
inline Complex phi_rational_neg(const Complex& z, long long a, long long b) {
  if (a < 1 || b < 1) throw std::domain_error("phi_rational_neg: a, b must be >= 1");
  const double sign = (((b * (a + 1)) % 2) == 0) ? 1.0 : -1.0;
  const Complex ez = std::exp(Complex(0.0, -2.0 * kPi) * static_cast<double>(b) * z);
  const Complex pre = 1.0 - sign * ez;
  detail_mord::check_prefactor(pre);
  gauss::PiRootTable root(b);
  detail::ComplexAccumulator s1;
  for (long long n = 0; n < b; ++n) {
    const double pn = (n & 1) ? -1.0 : 1.0;
    s1.add(pn * std::exp(Complex(0.0, -2.0 * kPi) * static_cast<double>(n) * z) *
           root(detail::floor_mod(a * ((n * n) % (2 * b)), 2 * b)));
  }
  detail::ComplexAccumulator s2;
  const double boa = static_cast<double>(b) / static_cast<double>(a);
  for (long long m = 1; m <= a; ++m) {
    const Complex w = z - static_cast<double>(m) + 0.5;
    s2.add(std::exp(Complex(0.0, -kPi) * boa * w * w));
  }
  const Complex tail =
      sign * ez * std::polar(1.0, -0.75 * kPi) /
      std::sqrt(static_cast<double>(a) / static_cast<double>(b)) * s2.get();
  return (s1.get() + tail) / pre;
}

// Cosh-kernel companion integral h(z, tau) = int_R e^{pi i tau x^2 - 2 pi z x} / cosh(pi x) dx,
// Im tau > 0; related to Phi by Phi(z,tau) = (1/2) e^{-pi i tau/4 + pi i z} h(z - tau/2, tau).
inline quad::QuadResult zwegers_h(const Complex& z, const Complex& tau, double tol = 1e-12) {
  if (!(tau.imag() > 0.0)) throw std::domain_error("zwegers_h: Im tau > 0 required");
  const double c = kPi * tau.imag();
  const double drift = kPi * std::abs(z) / c;
  const double U = quad::auto_truncate(c, tol) + 1.5 * drift + 1.0;
  quad::ContourSpec spec;
  spec.anchor = Complex(0.0, 0.0);
  spec.direction_angle = 0.0;
  spec.half_length = U;
  spec.panels = 24 * std::max(1, static_cast<int>(std::ceil(U / 3.5)));
  spec.nodes_per_panel = 16;
  auto integrand = [&](Complex x) {
    return std::exp(Complex(0.0, kPi) * tau * x * x - 2.0 * kPi * z * x) /
           std::cosh(kPi * x);
  };
  return quad::integrate_line(integrand, spec);
}

// Right side of Phi(z+a,tau) - Phi(z,tau) = (i/sqrt(-i tau)) sum_{m<a} e^{(pi i/tau)(z+m+1/2)^2}.
inline Complex phi_shift_a(const Complex& z, const Complex& tau, long long a) {
  if (a < 1) throw std::domain_error("phi_shift_a: a must be >= 1");
  detail::ComplexAccumulator acc;
  for (long long m = 0; m < a; ++m) {
    const Complex w = z + static_cast<double>(m) + 0.5;
    acc.add(std::exp(Complex(0.0, kPi) / tau * w * w));
  }
  return Complex(0.0, 1.0) / sqrt_minus_i_tau(tau) * acc.get();
}

}  // namespace levinson::mordell
