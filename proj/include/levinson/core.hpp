#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace levinson {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr long double kPiL = 3.141592653589793238462643383279502884L;

// Thrown when a quadrature error estimate exceeds the requested tolerance.
class convergence_error : public std::runtime_error {
 public:
  convergence_error(const std::string& what, double estimate)
      : std::runtime_error(what), estimate_(estimate) {}
  double estimate() const noexcept { return estimate_; }

 private:
  double estimate_;
};

namespace detail {

// Fixed-order reduction with a long double carry. Every sum in the library
// goes through one of these so results are bit-identical for a fixed node
// count regardless of how callers schedule the work.
struct ComplexAccumulator {
  long double re = 0.0L, im = 0.0L;
  void add(const Complex& v) {
    re += v.real();
    im += v.imag();
  }
  Complex get() const { return {static_cast<double>(re), static_cast<double>(im)}; }
};

inline long long floor_mod(long long x, long long m) {
  long long r = x % m;
  return r < 0 ? r + m : r;
}

inline std::string to_string(const Complex& z) {
  return "(" + std::to_string(z.real()) + ", " + std::to_string(z.imag()) + ")";
}

}  // namespace detail
}  // namespace levinson
