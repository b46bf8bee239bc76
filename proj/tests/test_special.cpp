#include <doctest.h>

#include <cmath>
#include <complex>

#include "levinson/special.hpp"
#include "oracles.hpp"

using levinson::Complex;
using levinson::kPi;
namespace sp = levinson::special;

namespace {
Complex cld_to_d(oracle::CLD v) {
  return {static_cast<double>(v.real()), static_cast<double>(v.imag())};
}
double rel_err(Complex got, Complex want) {
  return std::abs(got - want) / (1.0 + std::abs(want));
}
}  // namespace

TEST_CASE("log_gamma: pinned values") {
  CHECK(std::abs(sp::log_gamma(Complex(1.0, 0.0))) <= 1e-14);
  CHECK(std::abs(sp::log_gamma(Complex(2.0, 0.0))) <= 1e-14);
  CHECK(std::abs(sp::log_gamma(Complex(0.25, 0.0)) -
                 Complex(static_cast<double>(oracle::kLogGammaQuarter), 0.0)) <= 1e-13);
  CHECK_THROWS_AS(sp::log_gamma(Complex(0.0, 0.0)), std::domain_error);
  CHECK_THROWS_AS(sp::log_gamma(Complex(-3.0, 0.0)), std::domain_error);
}

TEST_CASE("log_gamma: agreement with the long double oracle on a grid") {
  const double res[] = {-5.5, -0.7, 0.25, 0.5, 1.7, 4.0, 11.3, 25.0};
  const double ims[] = {-40.0, -7.0, -0.3, 0.0, 0.4, 3.0, 18.0, 90.0};
  for (double re : res)
    for (double im : ims) {
      const Complex s(re, im);
      if (sp::is_nonpositive_integer(s)) continue;
      if (im == 0.0 && re < 0.0) continue;  // stay off the cut
      const Complex want = cld_to_d(oracle::lgamma_ld(oracle::CLD(re, im)));
      CHECK(rel_err(sp::log_gamma(s), want) <= 1e-13);
    }
}

TEST_CASE("digamma: pinned values, recurrence, finite differences") {
  CHECK(std::abs(sp::digamma(Complex(1.0, 0.0)) -
                 Complex(-static_cast<double>(oracle::kEulerGamma), 0.0)) <= 1e-12);
  const Complex s(0.7, 2.0);
  CHECK(std::abs(sp::digamma(s + 1.0) - sp::digamma(s) - 1.0 / s) <= 1e-13);
  // central difference of log_gamma at 3+5i
  const Complex p(3.0, 5.0);
  const double h = 1e-5;
  const Complex fd = (sp::log_gamma(p + h) - sp::log_gamma(p - h)) / (2.0 * h);
  CHECK(std::abs(sp::digamma(p) - fd) <= 1e-7);
  CHECK_THROWS_AS(sp::digamma(Complex(0.0, 0.0)), std::domain_error);
  for (double re : {-2.5, 0.3, 1.0, 7.0})
    for (double im : {0.5, 6.0, 45.0}) {
      const Complex want = cld_to_d(oracle::digamma_ld(oracle::CLD(re, im)));
      CHECK(rel_err(sp::digamma(Complex(re, im)), want) <= 1e-13);
    }
}

TEST_CASE("h_factor: closed forms and oracle value") {
  CHECK(std::abs(sp::h_factor(Complex(2.0, 0.0)).value - Complex(1.0 / kPi, 0.0)) <= 1e-14);
  CHECK(std::abs(sp::h_factor(Complex(1.0, 0.0)).value - Complex(1.0, 0.0)) <= 1e-14);
  const Complex want(static_cast<double>(oracle::kHRe_half14i),
                     static_cast<double>(oracle::kHIm_half14i));
  const Complex got = sp::h_factor(Complex(0.5, 14.0)).value;
  CHECK(std::abs(got - want) / std::abs(want) <= 1e-12);
}

TEST_CASE("GammaFactor: exp(log_value) == value") {
  for (double re : {0.3, 1.0, 2.5, 10.0})
    for (double im : {0.0, 1.0, 14.0, 60.0}) {
      const auto g = sp::h_factor(Complex(re, im));
      CHECK(std::abs(std::exp(g.log_value) - g.value) <= 1e-12 * std::abs(g.value));
    }
}

TEST_CASE("chi: symmetry and modulus on the critical line") {
  CHECK(std::abs(sp::chi(Complex(0.5, 0.0)) - Complex(1.0, 0.0)) <= 1e-14);
  const Complex s(0.3, 7.0);
  CHECK(std::abs(sp::chi(s) * sp::chi(1.0 - s) - Complex(1.0, 0.0)) <= 1e-12);
  CHECK(std::abs(std::abs(sp::chi(Complex(0.5, 10.0))) - 1.0) <= 1e-12);
}

TEST_CASE("theta_rs: exact zero, oddness, pinned values, branch continuity") {
  CHECK(sp::theta_rs(0.0) == 0.0);
  CHECK(std::abs(sp::theta_rs(-17.5) + sp::theta_rs(17.5)) <= 1e-13);
  CHECK(std::abs(sp::theta_rs(17.5) - static_cast<double>(oracle::kTheta17_5)) <= 1e-12);
  CHECK(std::abs(sp::theta_rs(100.0) - static_cast<double>(oracle::kTheta100)) <= 1e-10);
  CHECK_THROWS_AS(sp::theta_rs(600.0), std::domain_error);

  // |theta(t+d) - theta(t)| <= 1.1 d |theta'(t)| + 1e-8 guards against 2 pi jumps
  const double d = 1e-4;
  for (double t = 1.0; t <= 100.0; t += 4.7) {
    const double dtheta = sp::theta_rs(t + d) - sp::theta_rs(t);
    const double slope = (sp::theta_rs(t + d) - sp::theta_rs(t - d)) / (2.0 * d);
    CHECK(std::abs(dtheta) <= 1.1 * d * std::abs(slope) + 1e-8);
  }
  for (double t = 0.5; t <= 100.0; t += 9.3)
    CHECK(std::abs(sp::theta_rs(t) - static_cast<double>(oracle::theta_ld(t))) <= 1e-12);
}

TEST_CASE("zeta_em: pinned values and pole") {
  CHECK(std::abs(sp::zeta_em(Complex(2.0, 0.0)) -
                 Complex(static_cast<double>(oracle::kPiSqOver6), 0.0)) <= 1e-12);
  CHECK(std::abs(sp::zeta_em(Complex(0.5, 0.0)) -
                 Complex(static_cast<double>(oracle::kZetaHalf), 0.0)) <= 1e-12);
  CHECK_THROWS_AS(sp::zeta_em(Complex(1.0, 0.0)), std::domain_error);
  CHECK_THROWS_AS(sp::zeta_em(Complex(2.0, 0.0), 5), std::invalid_argument);
}

TEST_CASE("zeta_em: Borwein cross-check in the strip") {
  for (double re : {0.1, 0.5, 0.9, 1.5, 3.0})
    for (double im : {0.0, 3.0, 17.0, 49.0}) {
      const Complex s(re, im);
      if (s == Complex(1.0, 0.0)) continue;
      const Complex want = cld_to_d(oracle::zeta_borwein(oracle::CLD(re, im)));
      CHECK(rel_err(sp::zeta_em(s), want) <= 1e-12);
    }
}

TEST_CASE("zeta_em: functional equation residual on the strip grid") {
  // 20-point grid in 0 < Re s < 1, |Im s| <= 50
  for (int i = 0; i < 20; ++i) {
    const double re = 0.1 + 0.8 * (i % 5) / 4.0;
    const double im = -50.0 + 100.0 * (i / 5) / 3.0;
    const Complex s(re, im);
    const Complex z = sp::zeta_em(s);
    const Complex r = z - sp::chi(s) * sp::zeta_em(1.0 - s);
    CHECK(std::abs(r) <= 1e-10 * (1.0 + std::abs(z)));
  }
}

TEST_CASE("zeta_prime_em: finite differences, pinned value, conjugation") {
  const Complex s2(2.0, 0.0);
  const double h = 1e-5;
  const Complex fd = (sp::zeta_em(s2 + h) - sp::zeta_em(s2 - h)) / (2.0 * h);
  CHECK(std::abs(sp::zeta_prime_em(s2) - fd) <= 1e-7);
  CHECK(std::abs(sp::zeta_prime_em(Complex(0.0, 0.0)) -
                 Complex(static_cast<double>(oracle::kZetaPrime0), 0.0)) <= 1e-10);
  const Complex s(0.4, 3.0);
  CHECK(std::abs(std::conj(sp::zeta_prime_em(std::conj(s))) - sp::zeta_prime_em(s)) <= 1e-13);
  CHECK_THROWS_AS(sp::zeta_prime_em(Complex(1.0, 0.0)), std::domain_error);
}

TEST_CASE("hardy_z: zeta(1/2), first zero bracket, evenness") {
  CHECK(std::abs(sp::hardy_z(0.0) - static_cast<double>(oracle::kZetaHalf)) <= 1e-12);
  CHECK(sp::hardy_z(14.10) * sp::hardy_z(14.20) < 0.0);
  CHECK(std::abs(sp::hardy_z(-25.0) - sp::hardy_z(25.0)) <= 1e-11);
  CHECK(std::abs(sp::hardy_z(20.0) - static_cast<double>(oracle::kZ20)) <= 1e-11);
  CHECK_THROWS_AS(sp::hardy_z(101.0), std::domain_error);
}

TEST_CASE("hardy_z: imaginary residual stays below 1e-9 on [0, 100]") {
  for (int i = 0; i < 200; ++i) {
    const double t = 100.0 * i / 199.0;
    const Complex w = std::polar(1.0, sp::theta_rs(t)) * sp::zeta_em(Complex(0.5, t));
    CHECK(std::abs(w.imag()) <= 1e-9);
  }
}

TEST_CASE("conjugate symmetry: conj(F(conj s)) == F(s)") {
  const Complex pts[] = {{0.3, 2.0}, {1.4, -11.0}, {2.0, 31.0}, {0.8, -0.2}};
  for (const Complex& s : pts) {
    CHECK(std::abs(std::conj(sp::log_gamma(std::conj(s))) - sp::log_gamma(s)) <= 1e-12);
    CHECK(std::abs(std::conj(sp::digamma(std::conj(s))) - sp::digamma(s)) <= 1e-12);
    CHECK(std::abs(std::conj(sp::zeta_em(std::conj(s))) - sp::zeta_em(s)) <= 1e-12);
    CHECK(std::abs(std::conj(sp::h_factor(std::conj(s)).value) - sp::h_factor(s).value) <=
          1e-12 * std::abs(sp::h_factor(s).value));
  }
}
