#include <doctest.h>

#include <cmath>
#include <complex>
#include <numeric>

#include "levinson/gauss_fourier.hpp"
#include "oracles.hpp"

using levinson::Complex;
using levinson::kPi;
namespace gs = levinson::gauss;

namespace {
Complex cld_to_d(oracle::CLD v) {
  return {static_cast<double>(v.real()), static_cast<double>(v.imag())};
}
}  // namespace

TEST_CASE("ReducedRational: reduction, sign normalization, errors") {
  gs::ReducedRational r(-6, 4);
  CHECK(r.num == -3);
  CHECK(r.den == 2);
  gs::ReducedRational q(3, -9);
  CHECK(q.num == -1);
  CHECK(q.den == 3);
  CHECK(gs::ReducedRational(-3, 1).inverse() == gs::ReducedRational(-1, 3));
  CHECK(gs::ReducedRational(2, 3).inverse() == gs::ReducedRational(3, 2));
  CHECK_THROWS_AS(gs::ReducedRational(0, 5), std::domain_error);
  CHECK_THROWS_AS(gs::ReducedRational(1, 0), std::domain_error);
}

TEST_CASE("gauss_sum_direct: pinned small sums") {
  CHECK(std::abs(gs::gauss_sum_direct(1, 1) - Complex(1.0, 0.0)) <= 1e-15);
  CHECK(std::abs(gs::gauss_sum_direct(1, 2)) <= 1e-15);
  CHECK(std::abs(gs::gauss_sum_direct(1, 3) - Complex(0.0, std::sqrt(3.0))) <= 1e-14);
  CHECK(std::abs(gs::gauss_sum_direct(1, 4) - Complex(2.0, 2.0)) <= 1e-14);
  CHECK_THROWS_AS(gs::gauss_sum_direct(1, 0), std::domain_error);
}

TEST_CASE("gauss_sum_direct: long double phase-accumulation oracle sweep") {
  for (long long b = 1; b <= 30; ++b)
    for (long long a = -30; a <= 30; ++a) {
      if (a == 0) continue;
      CHECK(std::abs(gs::gauss_sum_direct(a, b) - cld_to_d(oracle::gauss_direct_ld(a, b))) <=
            1e-11);
    }
}

TEST_CASE("gauss_sum_classify: classes and unit powers") {
  CHECK(gs::gauss_sum_classify(1, 2).magnitude_class == gs::MagnitudeClass::zero);
  CHECK(std::abs(gs::gauss_sum_classify(1, 2).value) <= 1e-14);

  auto c3 = gs::gauss_sum_classify(1, 3);
  CHECK(c3.magnitude_class == gs::MagnitudeClass::sqrt_b);
  CHECK(std::abs(c3.magnitude() - std::sqrt(3.0)) <= 1e-14);
  const Complex q3 = c3.value / std::sqrt(3.0);
  CHECK(std::abs(q3 * q3 * q3 * q3 - Complex(1.0, 0.0)) <= 1e-12);

  auto c4 = gs::gauss_sum_classify(3, 4);
  CHECK(c4.magnitude_class == gs::MagnitudeClass::two_sqrt_b);
  CHECK(std::abs(std::abs(c4.value) - std::sqrt(8.0)) <= 1e-13);
  CHECK(c4.unity_power.has_value());
  CHECK(*c4.unity_power % 2 == 1);  // eighth root with odd power for 4 | b
  const Complex u4 = c4.value / std::abs(c4.value);
  Complex u8 = 1.0;
  for (int i = 0; i < 8; ++i) u8 *= u4;
  CHECK(std::abs(u8 - Complex(1.0, 0.0)) <= 1e-12);
}

TEST_CASE("gauss_sum_classify: non-coprime reduction d S(a/d, b/d)") {
  auto c = gs::gauss_sum_classify(2, 6);
  CHECK(c.scale == 2);
  CHECK(c.reduced_a == 1);
  CHECK(c.reduced_b == 3);
  CHECK(std::abs(c.value - gs::gauss_sum_direct(2, 6)) <= 1e-12);
  auto z = gs::gauss_sum_classify(0, 7);  // S(0,7) = 7
  CHECK(std::abs(z.value - Complex(7.0, 0.0)) <= 1e-13);
}

TEST_CASE("gauss_sum_classify: reconstruction matches direct sums, |a|,b <= 50") {
  for (long long b = 1; b <= 50; ++b)
    for (long long a = -50; a <= 50; ++a) {
      if (a == 0 || std::gcd(std::llabs(a), b) != 1) continue;
      const auto c = gs::gauss_sum_classify(a, b);
      const Complex direct = gs::gauss_sum_direct(a, b);
      if (c.magnitude_class == gs::MagnitudeClass::zero) {
        CHECK(std::abs(direct) <= 1e-11);
      } else {
        const Complex rebuilt = c.magnitude() * std::polar(1.0, kPi * *c.unity_power / 4.0);
        CHECK(std::abs(rebuilt - direct) <= 1e-11);
      }
    }
}

TEST_CASE("u_seq: pinned values and period/antiperiod") {
  CHECK(std::abs(gs::u_seq(gs::ReducedRational(-1, 1), 0) - Complex(1.0, 0.0)) <= 1e-15);
  CHECK(std::abs(gs::u_seq(gs::ReducedRational(-1, 1), 3) - Complex(1.0, 0.0)) <= 1e-13);
  for (long long b = 1; b <= 12; ++b)
    for (long long a = -9; a <= 9; ++a) {
      if (a == 0 || std::gcd(std::llabs(a), b) != 1) continue;
      gs::ReducedRational tau(a, b);
      const double sign = (std::llabs(a) % 2 == 1) ? 1.0 : -1.0;
      for (long long m = -3; m <= 2 * b; ++m)
        CHECK(std::abs(gs::u_seq(tau, m + b) - sign * gs::u_seq(tau, m)) <= 1e-13);
    }
}

TEST_CASE("v_table: pinned tables") {
  auto t1 = gs::v_table(gs::ReducedRational(-1, 1));
  CHECK(t1.period == 1);
  CHECK(std::abs(t1.values[0] - Complex(1.0, 0.0)) <= 1e-14);

  auto t3 = gs::v_table(gs::ReducedRational(-1, 3));
  CHECK(t3.period == 3);
  CHECK(std::abs(t3.values[0] - Complex(0.0, 1.0)) <= 1e-13);
  const Complex e6 = std::polar(1.0, -kPi / 6.0);
  CHECK(std::abs(t3.values[1] - e6) <= 1e-13);
  CHECK(std::abs(t3.values[2] - e6) <= 1e-13);

  auto t2 = gs::v_table(gs::ReducedRational(-2, 1));
  CHECK(t2.period == 2);
  CHECK(t2.parity == gs::Parity::even_a);
  CHECK(std::abs(t2.values[0]) <= 1e-15);
  CHECK(std::abs(t2.values[1] - Complex(1.0, 0.0)) <= 1e-14);
}

TEST_CASE("v_table: invariants for all reduced a/b with b <= 40, |a| <= 40") {
  for (long long b = 1; b <= 40; ++b)
    for (long long a = -40; a <= 40; ++a) {
      if (a == 0 || std::gcd(std::llabs(a), b) != 1) continue;
      gs::ReducedRational tau(a, b);
      const bool odd = std::llabs(a) % 2 == 1;
      const auto vt = gs::v_table(tau);
      REQUIRE(vt.period == (odd ? b : 2 * b));

      // root-of-unity / zero pattern
      for (long long n = 0; n < vt.period; ++n) {
        if (!odd && n % 2 == 0) {
          CHECK(std::abs(vt.values[n]) <= 1e-12);
        } else {
          CHECK(std::abs(std::abs(vt.values[n]) - 1.0) <= 1e-12);
        }
      }
      // reflection V(period - n) = V(n)
      for (long long n = 0; n < vt.period; ++n)
        CHECK(std::abs(vt.at(vt.period - n) - vt.values[n]) <= 1e-12);
      // conjugation V_{-tau}(n) = conj(V_tau(n))
      const auto vneg = gs::v_table(tau.negated());
      for (long long n = 0; n < vt.period; ++n)
        CHECK(std::abs(vneg.values[n] - std::conj(vt.values[n])) <= 1e-12);
      // shift V_{tau+2} = V_tau (downward when tau + 2 would be zero)
      const long long ashift = (a + 2 * b != 0) ? a + 2 * b : a - 2 * b;
      const auto vshift = gs::v_table(gs::ReducedRational(ashift, b));
      for (long long n = 0; n < vt.period; ++n)
        CHECK(std::abs(vshift.values[n] - vt.values[n]) <= 1e-12);
      // Fourier round-trip over one period
      for (long long m = 0; m < vt.period; ++m)
        CHECK(std::abs(gs::u_from_vtable(vt, m) - gs::u_seq(tau, m)) <= 1e-12);
    }
}

TEST_CASE("v_table: long double DFT oracle sweep") {
  for (long long b = 1; b <= 24; ++b)
    for (long long a : {-7LL, -2LL, -1LL, 1LL, 3LL, 8LL}) {
      if (std::gcd(std::llabs(a), b) != 1) continue;
      const auto vt = gs::v_table(gs::ReducedRational(a, b));
      for (long long n = 0; n < vt.period; ++n)
        CHECK(std::abs(vt.values[n] - cld_to_d(oracle::v_dft_ld(a, b, n))) <= 1e-12);
    }
}

TEST_CASE("v_remark_formula: closed form for tau = 1/b") {
  CHECK(std::abs(gs::v_remark_formula(1, 0) - Complex(1.0, 0.0)) <= 1e-15);
  CHECK(std::abs(gs::v_remark_formula(3, 0) - Complex(0.0, -1.0)) <= 1e-14);
  {
    const auto vt = gs::v_table(gs::ReducedRational(1, 3));
    CHECK(std::abs(gs::v_remark_formula(3, 0) - vt.values[0]) <= 1e-13);
  }
  {
    const auto vt = gs::v_table(gs::ReducedRational(1, 5));
    CHECK(std::abs(gs::v_remark_formula(5, 2) - vt.values[2]) <= 1e-12);
  }
  for (long long b = 1; b <= 25; ++b) {
    const auto vt = gs::v_table(gs::ReducedRational(1, b));
    for (long long n = 0; n < b; ++n)
      CHECK(std::abs(gs::v_remark_formula(b, n) - vt.values[n]) <= 1e-12);
  }
}
