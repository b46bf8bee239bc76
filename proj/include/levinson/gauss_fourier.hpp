#pragma once
// Quadratic Gauss sums S(a,b) = sum_{n<b} e^{2 pi i (a/b) n^2} and the finite
// Fourier coefficients V_tau(n) of u_tau(m) = (-1)^m e^{pi i tau m^2} for
// rational tau = a/b:
//
//   odd a:   V(n) = b^{-1/2}      sum_{m mod b}  u(m) e^{-2 pi i n m / b}
//   even a:  V(n) = (2 sqrt b)^-1 sum_{m mod 2b} u(m) e^{-pi i n m / b}
//
// Every root of unity is taken from an integer-reduced angle (k mod 2b), so
// the symmetry and vanishing patterns of the tables hold to roundoff: for
// j >= den the table stores the exact negation of entry j - den, which makes
// the even-a / even-n cancellation exact.
//
// Magnitudes: |S(a,b)| is 0 for b = 2 mod 4, sqrt(b) for odd b and sqrt(2b)
// for b = 0 mod 4 (the class labelled two_sqrt_b); S divided by its magnitude
// is always an eighth root of unity e^{i pi h / 4}.

#include <cmath>
#include <complex>
#include <cstdlib>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <vector>

#include "levinson/core.hpp"

namespace levinson::gauss {

inline constexpr long long kMaxDen = 1000000;  // keeps integer phases in range

struct ReducedRational {
  long long num = 1;  // nonzero, carries the sign
  long long den = 1;  // >= 1, coprime to |num|

  ReducedRational(long long a, long long b) {
    if (b == 0) throw std::domain_error("rational: zero denominator");
    if (a == 0) throw std::domain_error("rational: tau must be nonzero");
    if (b < 0) {
      a = -a;
      b = -b;
    }
    const long long g = std::gcd(std::llabs(a), b);
    num = a / g;
    den = b / g;
    if (den > kMaxDen) throw std::domain_error("rational: denominator too large");
  }

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  bool odd_numerator() const { return std::llabs(num) % 2 == 1; }
  ReducedRational inverse() const {
    return num > 0 ? ReducedRational(den, num) : ReducedRational(-den, -num);
  }
  ReducedRational negated() const { return ReducedRational(-num, den); }
  friend bool operator==(const ReducedRational& x, const ReducedRational& y) {
    return x.num == y.num && x.den == y.den;
  }
};

// Lookup table for e^{i pi k / den}; entries den..2den-1 are exact negations
// of 0..den-1.
class PiRootTable {
 public:
  explicit PiRootTable(long long den) : den_(den), roots_(2 * den) {
    for (long long j = 0; j < den; ++j)
      roots_[j] = std::polar(1.0, kPi * static_cast<double>(j) / static_cast<double>(den));
    for (long long j = den; j < 2 * den; ++j) roots_[j] = -roots_[j - den];
  }
  Complex operator()(long long num) const { return roots_[detail::floor_mod(num, 2 * den_)]; }

 private:
  long long den_;
  std::vector<Complex> roots_;
};

inline Complex gauss_sum_direct(long long a, long long b) {
  if (b < 1) throw std::domain_error("gauss_sum_direct: b must be >= 1");
  if (b > kMaxDen) throw std::domain_error("gauss_sum_direct: b too large");
  const long long M = 2 * b;
  const long long ar = detail::floor_mod(2 * detail::floor_mod(a, M), M);
  PiRootTable root(b);
  detail::ComplexAccumulator acc;
  for (long long n = 0; n < b; ++n) acc.add(root(ar * ((n * n) % M)));  // 2 a n^2 mod 2b
  return acc.get();
}

enum class MagnitudeClass { zero, sqrt_b, two_sqrt_b };

inline const char* magnitude_class_name(MagnitudeClass m) {
  switch (m) {
    case MagnitudeClass::zero: return "zero";
    case MagnitudeClass::sqrt_b: return "sqrt_b";
    default: return "two_sqrt_b";
  }
}

struct GaussSumValue {
  Complex value;                    // d * S(a/d, b/d), d = gcd(a, b)
  MagnitudeClass magnitude_class;   // class of the reduced sum
  std::optional<int> unity_power;   // h with S_red / |S_red| = e^{i pi h / 4}
  long long reduced_a = 0, reduced_b = 1;
  long long scale = 1;              // the gcd factor d

  double magnitude() const {
    switch (magnitude_class) {
      case MagnitudeClass::zero: return 0.0;
      case MagnitudeClass::sqrt_b:
        return static_cast<double>(scale) * std::sqrt(static_cast<double>(reduced_b));
      default:
        return static_cast<double>(scale) * std::sqrt(2.0 * static_cast<double>(reduced_b));
    }
  }
};

// Non-coprime inputs are reduced with S(a,b) = d S(a/d, b/d) first.
inline GaussSumValue gauss_sum_classify(long long a, long long b) {
  if (b < 1) throw std::domain_error("gauss_sum_classify: b must be >= 1");
  const long long d = std::gcd(std::llabs(a), b);  // gcd(0, b) = b
  const long long ar = a / d, br = b / d;
  const Complex sr = gauss_sum_direct(ar, br);
  GaussSumValue out;
  out.value = static_cast<double>(d) * sr;
  out.reduced_a = ar;
  out.reduced_b = br;
  out.scale = d;
  if (br % 4 == 2) {
    out.magnitude_class = MagnitudeClass::zero;
    return out;
  }
  const double mag = (br % 2 == 1) ? std::sqrt(static_cast<double>(br))
                                   : std::sqrt(2.0 * static_cast<double>(br));
  out.magnitude_class = (br % 2 == 1) ? MagnitudeClass::sqrt_b : MagnitudeClass::two_sqrt_b;
  const Complex u = sr / mag;
  const int h = static_cast<int>(detail::floor_mod(
      static_cast<long long>(std::llround(std::arg(u) * 4.0 / kPi)), 8));
  if (std::abs(u - std::polar(1.0, kPi * h / 4.0)) > 1e-9)
    throw std::runtime_error("gauss_sum_classify: sum is not unit * class magnitude");
  out.unity_power = h;
  return out;
}

// u_tau(m) = (-1)^m e^{pi i (a/b) m^2}, angle reduced mod 2b in integers.
inline Complex u_seq(const ReducedRational& tau, long long m) {
  const long long b = tau.den, M = 2 * b;
  const long long mr = detail::floor_mod(m, M);
  const long long am = detail::floor_mod(tau.num, M);
  PiRootTable root(b);
  return root((mr * (b % M)) % M + am * ((mr * mr) % M));
}

enum class Parity { odd_a, even_a };

struct VTable {
  ReducedRational tau;
  long long period;  // b for odd a, 2b for even a
  std::vector<Complex> values;
  Parity parity;

  const Complex& at(long long n) const { return values[detail::floor_mod(n, period)]; }
};

inline VTable v_table(const ReducedRational& tau) {
  const long long b = tau.den, M = 2 * b;
  const bool odd = tau.odd_numerator();
  const long long period = odd ? b : 2 * b;
  const long long am = detail::floor_mod(tau.num, M);
  PiRootTable root(b);
  VTable vt{tau, period, std::vector<Complex>(period), odd ? Parity::odd_a : Parity::even_a};
  const double norm =
      (odd ? 1.0 : 0.5) / std::sqrt(static_cast<double>(b));
  for (long long n = 0; n < period; ++n) {
    detail::ComplexAccumulator acc;
    for (long long m = 0; m < period; ++m) {
      long long phase = (m * (b % M)) % M + am * ((m * m) % M);  // u(m) angle * b/pi
      phase -= ((odd ? 2 * n : n) % M) * m;                      // Fourier twist
      acc.add(root(phase));
    }
    vt.values[n] = norm * acc.get();
  }
  return vt;
}

// Forward expansion with the inverse-DFT prefactor 1/sqrt(b) (both parities);
// reconstructs u_tau(m) from its table.
inline Complex u_from_vtable(const VTable& vt, long long m) {
  const long long P = vt.period;
  const long long mr = detail::floor_mod(m, P);
  PiRootTable root(P);
  detail::ComplexAccumulator acc;
  for (long long n = 0; n < P; ++n) acc.add(vt.values[n] * root(2 * n * mr));
  return acc.get() / std::sqrt(static_cast<double>(vt.tau.den));
}

// Closed form V_{1/b}(n) = (-1)^n e^{i pi/4} e^{-i pi b/4} e^{-i pi n^2/b}.
inline Complex v_remark_formula(long long b, long long n) {
  if (b < 1) throw std::domain_error("v_remark_formula: b must be >= 1");
  if (b > kMaxDen) throw std::domain_error("v_remark_formula: b too large");
  const long long nr = detail::floor_mod(n, b);  // the formula is b-periodic
  const long long k = 4 * b * nr + b - b * b - 4 * nr * nr;
  return PiRootTable(4 * b)(k);  // e^{i pi k / (4b)}
}

}  // namespace levinson::gauss
