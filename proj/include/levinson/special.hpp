#pragma once
// Reference special functions used by every identity check in the library:
//
//   log_gamma, digamma     -- principal-branch complex log Gamma / psi,
//                             upward recursion into |z| >= 12 followed by the
//                             Stirling series through B12.
//   h_factor, chi          -- h(s) = pi^{-s/2} Gamma(s/2), chi = h(1-s)/h(s).
//   theta_rs               -- Riemann-Siegel theta, the phase of h(1/2+it),
//                             computed exactly from log_gamma (no asymptotic
//                             t/2 log(t/2pi) expansion, so it is also correct
//                             at small t).
//   zeta_em, zeta_prime_em -- Euler-Maclaurin zeta and its termwise
//                             derivative: N-term Dirichlet sum, tail integral,
//                             Bernoulli corrections B2..B12. Documented
//                             accuracy <= 1e-12 for |Im s| <= 100 with
//                             N = ceil(3 |Im s|) + 20.
//   hardy_z                -- Z(t) = e^{i theta(t)} zeta(1/2+it), imaginary
//                             residual checked then discarded.
//
// On C minus (-inf, 0] the recursion log Gamma(z) = log Gamma(z+1) - Log z
// with principal logs reproduces the continuous determination with
// log Gamma(1) = 0; everything here stays off that cut.

#include <cmath>
#include <complex>
#include <stdexcept>

#include "levinson/core.hpp"

namespace levinson::special {

// A point s = 1/2 + i t on the critical line; Re(s) = 1/2 by construction.
struct CriticalPoint {
  double t;
  Complex s;
  static CriticalPoint from_ordinate(double t) { return {t, Complex(0.5, t)}; }
};

struct GammaFactor {
  Complex value;      // h(s)
  Complex log_value;  // log h(s), principal determination
};

inline bool is_nonpositive_integer(const Complex& s) {
  return s.imag() == 0.0 && s.real() <= 0.0 && s.real() == std::floor(s.real());
}

inline Complex log_gamma(Complex s) {
  if (is_nonpositive_integer(s))
    throw std::domain_error("log_gamma: pole at s = " + detail::to_string(s));
  int shift = 0;
  if (s.real() < 12.0) shift = static_cast<int>(std::ceil(12.0 - s.real()));
  const Complex w = s + static_cast<double>(shift);
  // Stirling series: (w-1/2) log w - w + log(2 pi)/2 + sum B_2k/(2k(2k-1) w^{2k-1})
  static const double c[6] = {1.0 / 12.0,  -1.0 / 360.0, 1.0 / 1260.0,
                              -1.0 / 1680.0, 1.0 / 1188.0, -691.0 / 360360.0};
  const Complex iw2 = 1.0 / (w * w);
  Complex series = c[5];
  for (int k = 4; k >= 0; --k) series = series * iw2 + c[k];
  series /= w;
  Complex lg = (w - 0.5) * std::log(w) - w + 0.5 * std::log(2.0 * kPi) + series;
  detail::ComplexAccumulator logs;
  for (int k = 0; k < shift; ++k) logs.add(std::log(s + static_cast<double>(k)));
  return lg - logs.get();
}

inline Complex digamma(Complex s) {
  if (is_nonpositive_integer(s))
    throw std::domain_error("digamma: pole at s = " + detail::to_string(s));
  int shift = 0;
  if (s.real() < 12.0) shift = static_cast<int>(std::ceil(12.0 - s.real()));
  const Complex w = s + static_cast<double>(shift);
  // psi(w) = log w - 1/2w - sum B_2k/(2k w^{2k})
  static const double c[6] = {1.0 / 12.0,  -1.0 / 120.0, 1.0 / 252.0,
                              -1.0 / 240.0, 1.0 / 132.0,  -691.0 / 32760.0};
  const Complex iw2 = 1.0 / (w * w);
  Complex series = c[5];
  for (int k = 4; k >= 0; --k) series = series * iw2 + c[k];
  series *= iw2;
  Complex psi = std::log(w) - 0.5 / w - series;
  detail::ComplexAccumulator recip;
  for (int k = 0; k < shift; ++k) recip.add(1.0 / (s + static_cast<double>(k)));
  return psi - recip.get();
}

inline Complex h_log(const Complex& s) {
  return -0.5 * s * std::log(kPi) + log_gamma(0.5 * s);
}

inline GammaFactor h_factor(const Complex& s) {
  GammaFactor g;
  g.log_value = h_log(s);
  g.value = std::exp(g.log_value);
  return g;
}

// chi(s) = h(1-s)/h(s), via the log difference so neither factor overflows.
inline Complex chi(const Complex& s) { return std::exp(h_log(1.0 - s) - h_log(s)); }

inline double theta_rs(double t) {
  if (!(std::abs(t) <= 500.0))
    throw std::domain_error("theta_rs: |t| <= 500 is the documented range");
  return std::imag(log_gamma(Complex(0.25, 0.5 * t))) - 0.5 * t * std::log(kPi);
}

inline int zeta_terms_auto(const Complex& s) {
  return static_cast<int>(std::ceil(3.0 * std::abs(s.imag()))) + 20;
}

// Euler-Maclaurin zeta. terms == 0 picks the documented automatic count.
inline Complex zeta_em(const Complex& s, int terms = 0) {
  if (s == Complex(1.0, 0.0)) throw std::domain_error("zeta_em: pole at s = 1");
  if (terms == 0) terms = zeta_terms_auto(s);
  if (terms < 10) throw std::invalid_argument("zeta_em: terms must be >= 10");
  const double N = terms;
  detail::ComplexAccumulator acc;
  acc.add(Complex(1.0, 0.0));
  for (int n = 2; n < terms; ++n) acc.add(std::exp(-s * std::log(static_cast<double>(n))));
  const Complex npow = std::exp(-s * std::log(N));  // N^{-s}
  const Complex tail = npow * N / (s - 1.0) + 0.5 * npow;
  // B_2k/(2k)! * s(s+1)...(s+2k-2) * N^{-s-2k+1}, k = 1..6
  static const double b[6] = {1.0 / 12.0,       -1.0 / 720.0,     1.0 / 30240.0,
                              -1.0 / 1209600.0, 1.0 / 47900160.0, -691.0 / 1307674368000.0};
  Complex corr = 0.0;
  Complex rising = s;
  double pw = 1.0 / N;
  for (int k = 1; k <= 6; ++k) {
    corr += b[k - 1] * rising * pw;
    rising *= (s + static_cast<double>(2 * k - 1)) * (s + static_cast<double>(2 * k));
    pw /= N * N;
  }
  return acc.get() + tail + npow * corr;
}

inline Complex zeta_prime_em(const Complex& s, int terms = 0) {
  if (s == Complex(1.0, 0.0)) throw std::domain_error("zeta_prime_em: pole at s = 1");
  if (terms == 0) terms = zeta_terms_auto(s);
  if (terms < 10) throw std::invalid_argument("zeta_prime_em: terms must be >= 10");
  const double N = terms;
  const double lnN = std::log(N);
  detail::ComplexAccumulator acc;
  for (int n = 2; n < terms; ++n) {
    const double ln = std::log(static_cast<double>(n));
    acc.add(-ln * std::exp(-s * ln));
  }
  const Complex npow = std::exp(-s * lnN);
  const Complex n1s = npow * N;  // N^{1-s}
  Complex tail = -lnN * n1s / (s - 1.0) - n1s / ((s - 1.0) * (s - 1.0)) - 0.5 * lnN * npow;
  static const double b[6] = {1.0 / 12.0,       -1.0 / 720.0,     1.0 / 30240.0,
                              -1.0 / 1209600.0, 1.0 / 47900160.0, -691.0 / 1307674368000.0};
  Complex corr = 0.0;
  Complex rising = s;        // (s)_{2k-1}
  Complex rising_d = 1.0;    // d/ds (s)_{2k-1}, by the product rule
  double pw = 1.0 / N;
  for (int k = 1; k <= 6; ++k) {
    corr += b[k - 1] * pw * (rising_d - lnN * rising);
    const Complex f = (s + static_cast<double>(2 * k - 1)) * (s + static_cast<double>(2 * k));
    rising_d = rising_d * f + rising * (2.0 * s + static_cast<double>(4 * k - 1));
    rising *= f;
    pw /= N * N;
  }
  return acc.get() + tail + npow * corr;
}

inline double hardy_z(double t) {
  if (!(std::abs(t) <= 100.0))
    throw std::domain_error("hardy_z: |t| <= 100 is the documented range");
  const Complex w = std::polar(1.0, theta_rs(t)) * zeta_em(Complex(0.5, t));
  if (std::abs(w.imag()) > 1e-6)
    throw std::runtime_error("hardy_z: imaginary residual " + std::to_string(w.imag()) +
                             " exceeds the consistency bound 1e-6 at t = " + std::to_string(t));
  return w.real();
}

}  // namespace levinson::special
