#pragma once
// Internal extended-precision kernel: quad-double arithmetic (four
// nonoverlapping doubles, ~212-bit significand, ~63 decimal digits) built
// from the classical error-free transforms (two_sum, and two_prod via the
// hardware fused multiply-add).
//
// Motivation: for Re tau > 0 the Levinson integrand peaks like e^{~1.8 t}
// and f(1/2 + it, tau) itself grows to ~1e40 by t = 60, while the identity
// Z(t) = 2 Re{e^{i theta} R_tau} cancels all of it back to O(1). Verifying
// that identity to 1e-6 therefore needs ~50 significant digits end to end
// (integrand, Gauss-Legendre rule, and theta). This kernel supplies them;
// every public surface stays double.
//
// Additions and multiplications conserve the exact value through two_sum
// networks and only truncate below 2^-212 of the leading limb; the sweep
// renormalization keeps limbs ordered without requiring bit-canonical
// nonoverlap.

#include <cmath>
#include <cstdlib>
#include <map>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace levinson::wide {

using scalar = double;

struct W {
  double d[4];
};

// ---- error-free transforms --------------------------------------------------

inline double two_sum(double a, double b, double& err) {
  const double s = a + b;
  const double bb = s - a;
  err = (a - (s - bb)) + (b - bb);
  return s;
}
inline double quick_two_sum(double a, double b, double& err) {
  const double s = a + b;
  err = b - (s - a);
  return s;
}
inline double two_prod(double a, double b, double& err) {
  const double p = a * b;
  err = std::fma(a, b, -p);
  return p;
}

namespace detail_qd {

// Upward two_sum sweeps over a smallest-first expansion. Every sweep
// conserves the exact sum and canonicalizes roughly one more limb from the
// top (the final two_sum leaves e[n-1], e[n-2] exactly nonoverlapping), so
// four sweeps deliver four clean limbs.
inline void vsum_sweep(double* e, int n) {
  for (int pass = 0; pass < 4; ++pass) {
    double carry = e[0];
    for (int k = 1; k < n; ++k) carry = two_sum(e[k], carry, e[k - 1]);
    e[n - 1] = carry;
  }
}

// Truncate a smallest-first expansion of length n to a normalized quad.
inline W collapse(double* e, int n) {
  vsum_sweep(e, n);
  W out{{e[n - 1], n >= 2 ? e[n - 2] : 0.0, n >= 3 ? e[n - 3] : 0.0,
         n >= 4 ? e[n - 4] : 0.0}};
  return out;
}

}  // namespace detail_qd

// ---- basic arithmetic --------------------------------------------------------

inline W from_double(double x) { return {{x, 0.0, 0.0, 0.0}}; }
inline W from_ll(long long x) {
  const double hi = static_cast<double>(x);
  const double lo = static_cast<double>(x - static_cast<long long>(hi));
  return {{hi, lo, 0.0, 0.0}};
}
inline double to_double(const W& a) { return ((a.d[3] + a.d[2]) + a.d[1]) + a.d[0]; }
inline W neg(const W& a) { return {{-a.d[0], -a.d[1], -a.d[2], -a.d[3]}}; }

inline W add(const W& a, const W& b) {
  // merge by increasing magnitude, then exact expansion sum
  double g[8];
  int ia = 3, ib = 3, k = 0;
  while (ia >= 0 && ib >= 0)
    g[k++] = (std::fabs(a.d[ia]) <= std::fabs(b.d[ib])) ? a.d[ia--] : b.d[ib--];
  while (ia >= 0) g[k++] = a.d[ia--];
  while (ib >= 0) g[k++] = b.d[ib--];
  return detail_qd::collapse(g, 8);
}
inline W sub(const W& a, const W& b) { return add(a, neg(b)); }

inline W mul_s(const W& a, double b) {
  double e0, e1, e2;
  const double p0 = two_prod(a.d[0], b, e0);
  const double p1 = two_prod(a.d[1], b, e1);
  const double p2 = two_prod(a.d[2], b, e2);
  const double p3 = a.d[3] * b;
  double g[7] = {e2, p3, e1, p2, e0, p1, p0};
  return detail_qd::collapse(g, 7);
}

inline W mul(const W& a, const W& b) {
  double q0, q1, q2, q3, q4, q5;
  const double p0 = two_prod(a.d[0], b.d[0], q0);
  const double p1 = two_prod(a.d[0], b.d[1], q1);
  const double p2 = two_prod(a.d[1], b.d[0], q2);
  const double p3 = two_prod(a.d[0], b.d[2], q3);
  const double p4 = two_prod(a.d[1], b.d[1], q4);
  const double p5 = two_prod(a.d[2], b.d[0], q5);
  const double o3 = a.d[0] * b.d[3] + a.d[1] * b.d[2] + a.d[2] * b.d[1] + a.d[3] * b.d[0] +
                    q3 + q4 + q5;
  double g[10] = {o3, q1, q2, p3, p4, p5, q0, p1, p2, p0};
  return detail_qd::collapse(g, 10);
}

inline W div(const W& a, const W& b) {
  double q[5];
  W r = a;
  for (int k = 0; k < 4; ++k) {
    q[k] = r.d[0] / b.d[0];
    r = sub(r, mul_s(b, q[k]));
  }
  q[4] = r.d[0] / b.d[0];
  double g[5] = {q[4], q[3], q[2], q[1], q[0]};
  return detail_qd::collapse(g, 5);
}

inline W from_ratio(long long n, long long d) { return div(from_ll(n), from_ll(d)); }
inline W scalbn(const W& a, int k) {
  return {{std::ldexp(a.d[0], k), std::ldexp(a.d[1], k), std::ldexp(a.d[2], k),
           std::ldexp(a.d[3], k)}};
}

// Parse a decimal string (sign, digits, optional '.', optional exponent) into
// a quad; relative error a few units in the last qd place.
inline W parse_decimal(const char* s) {
  W v = from_ll(0);
  const W ten = from_ll(10);
  bool negate = false;
  if (*s == '-') {
    negate = true;
    ++s;
  } else if (*s == '+') {
    ++s;
  }
  long long frac_digits = 0;
  bool seen_dot = false;
  for (; *s; ++s) {
    if (*s == '.') {
      seen_dot = true;
    } else if (*s >= '0' && *s <= '9') {
      v = add(mul(v, ten), from_ll(*s - '0'));
      if (seen_dot) ++frac_digits;
    } else {
      break;
    }
  }
  long long expo = 0;
  if (*s == 'e' || *s == 'E') expo = std::atoll(s + 1);
  expo -= frac_digits;
  W scale = from_ll(1);
  const W base = expo >= 0 ? ten : from_ratio(1, 10);
  for (long long k = std::llabs(expo); k > 0; --k) scale = mul(scale, base);
  v = mul(v, scale);
  return negate ? neg(v) : v;
}

// ---- constants (exact double limb quads) -------------------------------------

inline const W& pi() {
  static const W v = {{0x1.921fb54442d18p+1, 0x1.1a62633145c07p-53,
                       -0x1.f1976b7ed8fbcp-109, 0x1.4cf98e804177dp-163}};
  return v;
}
inline const W& ln2() {
  static const W v = {{0x1.62e42fefa39efp-1, 0x1.abc9e3b39803fp-56,
                       0x1.7b57a079a1934p-111, -0x1.ace93a4ebe5d1p-165}};
  return v;
}
inline const W& half_pi() {
  static const W v = scalbn(pi(), -1);
  return v;
}
inline const W& two_pi() {
  static const W v = scalbn(pi(), 1);
  return v;
}
inline const W& one() {
  static const W v = from_ll(1);
  return v;
}

// ---- elementary functions -----------------------------------------------------

inline W exp(const W& x) {
  // x = m ln2 + r, exp(r) = exp(r/2^12)^{2^12}
  const double m = std::nearbyint(x.d[0] / ln2().d[0]);
  W r = sub(x, mul_s(ln2(), m));
  r = scalbn(r, -12);
  static const std::vector<W>* inv_fact = [] {
    auto* v = new std::vector<W>;
    W f = one();
    v->push_back(f);
    for (long long k = 1; k <= 16; ++k) {
      f = div(f, from_ll(k));
      v->push_back(f);
    }
    return v;
  }();
  W sum = (*inv_fact)[16];
  for (int k = 15; k >= 0; --k) sum = add(mul(sum, r), (*inv_fact)[k]);
  for (int i = 0; i < 12; ++i) sum = mul(sum, sum);
  return scalbn(sum, static_cast<int>(m));
}

inline void sincos(const W& x, W* sn, W* cs) {
  // quadrant reduction: a = x - q pi/2, |a| <= pi/4 (arguments stay < ~1e6)
  const double qf = std::nearbyint(x.d[0] / half_pi().d[0]);
  const W a = sub(x, mul_s(half_pi(), qf));
  const long q = ((static_cast<long>(qf) % 4) + 4) % 4;
  const W a2 = mul(a, a);
  static const std::vector<W>* sin_c = [] {
    auto* v = new std::vector<W>;
    W f = one();
    v->push_back(f);
    for (long long k = 1; k <= 25; ++k) {
      f = div(f, from_ll(2 * k * (2 * k + 1)));  // f = 1/(2k+1)!
      v->push_back((k % 2) ? neg(f) : f);
    }
    return v;
  }();
  static const std::vector<W>* cos_c = [] {
    auto* v = new std::vector<W>;
    W f = one();
    v->push_back(f);
    for (long long k = 1; k <= 25; ++k) {
      f = div(f, from_ll((2 * k - 1) * 2 * k));  // f = 1/(2k)!
      v->push_back((k % 2) ? neg(f) : f);
    }
    return v;
  }();
  W s = (*sin_c)[25];
  for (int k = 24; k >= 0; --k) s = add(mul(s, a2), (*sin_c)[k]);
  s = mul(s, a);
  W c = (*cos_c)[25];
  for (int k = 24; k >= 0; --k) c = add(mul(c, a2), (*cos_c)[k]);
  switch (q) {
    case 0: *sn = s; *cs = c; break;
    case 1: *sn = c; *cs = neg(s); break;
    case 2: *sn = neg(s); *cs = neg(c); break;
    default: *sn = neg(c); *cs = s; break;
  }
}

inline W log(const W& x) {
  if (!(x.d[0] > 0.0)) throw std::domain_error("wide::log: nonpositive argument");
  // two Newton steps y += x e^{-y} - 1 from the double seed
  W y = from_double(std::log(x.d[0]));
  for (int i = 0; i < 2; ++i) y = add(y, sub(mul(x, exp(neg(y))), one()));
  return y;
}

inline W atan2(const W& y, const W& x) {
  const double t0 = std::atan2(y.d[0], x.d[0]);
  W s, c;
  sincos(from_double(t0), &s, &c);
  const W u = add(mul(x, c), mul(y, s));
  const W v = sub(mul(y, c), mul(x, s));
  const W d = div(v, u);  // |d| ~ 1e-16
  const W d3 = mul(mul(d, d), d);
  return add(from_double(t0), sub(d, div(d3, from_ll(3))));
}

inline W sqrt(const W& x) {
  if (!(x.d[0] >= 0.0)) throw std::domain_error("wide::sqrt: negative argument");
  if (x.d[0] == 0.0) return from_ll(0);
  W y = from_double(std::sqrt(x.d[0]));
  for (int i = 0; i < 3; ++i) y = mul_s(add(y, div(x, y)), 0.5);
  return y;
}

// ---- complex ------------------------------------------------------------------

struct WC {
  W re, im;
};

inline WC wc_from(double re, double im) { return {from_double(re), from_double(im)}; }
inline WC add(const WC& a, const WC& b) { return {add(a.re, b.re), add(a.im, b.im)}; }
inline WC sub(const WC& a, const WC& b) { return {sub(a.re, b.re), sub(a.im, b.im)}; }
inline WC neg(const WC& a) { return {neg(a.re), neg(a.im)}; }
inline WC conj(const WC& a) { return {a.re, neg(a.im)}; }
inline WC mul(const WC& a, const WC& b) {
  return {sub(mul(a.re, b.re), mul(a.im, b.im)), add(mul(a.re, b.im), mul(a.im, b.re))};
}
inline WC mul_w(const WC& a, const W& b) { return {mul(a.re, b), mul(a.im, b)}; }
inline WC div(const WC& a, const WC& b) {
  const W d = add(mul(b.re, b.re), mul(b.im, b.im));
  return {div(add(mul(a.re, b.re), mul(a.im, b.im)), d),
          div(sub(mul(a.im, b.re), mul(a.re, b.im)), d)};
}
inline WC exp(const WC& z) {
  const W ex = exp(z.re);
  W s, c;
  sincos(z.im, &s, &c);
  return {mul(ex, c), mul(ex, s)};
}
inline WC log(const WC& z) {
  const W n = add(mul(z.re, z.re), mul(z.im, z.im));
  return {mul_s(log(n), 0.5), atan2(z.im, z.re)};
}
inline WC sin(const WC& z) {
  W s, c;
  sincos(z.re, &s, &c);
  const W e = exp(z.im);
  const W em = div(one(), e);
  const W ch = mul_s(add(e, em), 0.5);
  const W sh = mul_s(sub(e, em), 0.5);
  return {mul(s, ch), mul(c, sh)};
}
inline WC cos(const WC& z) {
  W s, c;
  sincos(z.re, &s, &c);
  const W e = exp(z.im);
  const W em = div(one(), e);
  const W ch = mul_s(add(e, em), 0.5);
  const W sh = mul_s(sub(e, em), 0.5);
  return {mul(c, ch), neg(mul(s, sh))};
}

// ---- log Gamma / Riemann-Siegel theta ------------------------------------------

// Stirling with recursion to Re w >= 130 and B2..B24; absolute error ~1e-49,
// enough for the ~46 digits the t <= 100 identity cancellation consumes.
inline WC lgamma(WC z) {
  int shift = 0;
  if (to_double(z.re) < 130.0) shift = static_cast<int>(std::ceil(130.0 - to_double(z.re)));
  WC w = {add(z.re, from_ll(shift)), z.im};
  static const std::vector<W>* coeffs = [] {
    auto* v = new std::vector<W>;
    const long long num[12] = {1, -1, 1, -1, 1, -691, 1, -3617, 43867, -174611, 854513,
                               -236364091};
    const long long den[12] = {12, 360, 1260, 1680, 1188, 360360, 156, 122400, 244188,
                               125400, 63756, 1507080};
    for (int i = 0; i < 12; ++i) v->push_back(from_ratio(num[i], den[i]));
    return v;
  }();
  const WC one_c{one(), from_ll(0)};
  const WC iw2 = div(one_c, mul(w, w));
  WC series = {(*coeffs)[11], from_ll(0)};
  for (int k = 10; k >= 0; --k) series = add(mul(series, iw2), WC{(*coeffs)[k], from_ll(0)});
  series = div(series, w);
  static const W* ln_2pi_half = [] { return new W(mul_s(add(ln2(), log(pi())), 0.5)); }();
  const WC lw = log(w);
  WC lg = add(mul(sub(w, WC{mul_s(one(), 0.5), from_ll(0)}), lw),
              WC{sub(*ln_2pi_half, w.re), neg(w.im)});
  lg = add(lg, series);
  WC acc = {from_ll(0), from_ll(0)};
  for (int k = 0; k < shift; ++k) acc = add(acc, log(WC{add(z.re, from_ll(k)), z.im}));
  return sub(lg, acc);
}

inline W theta_rs(double t) {
  const WC lg = lgamma(WC{from_ratio(1, 4), mul_s(from_double(t), 0.5)});
  static const W* lnpi = [] { return new W(log(pi())); }();
  return sub(lg.im, mul_s(mul(from_double(t), *lnpi), 0.5));
}

// ---- Gauss-Legendre nodes in wide precision -------------------------------------

struct NodeWeightW {
  W x, w;
};

inline const std::vector<NodeWeightW>& gl_rule_wide(int n) {
  static std::mutex mu;
  static std::map<int, std::vector<NodeWeightW>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  std::vector<NodeWeightW> rule(n);
  const int m = (n + 1) / 2;
  for (int i = 1; i <= m; ++i) {
    double zd = std::cos(3.141592653589793 * (i - 0.25) / (n + 0.5));
    {
      double z1, pp = 0.0;
      int iter = 0;
      do {
        double p1 = 1.0, p2 = 0.0;
        for (int j = 1; j <= n; ++j) {
          const double p3 = p2;
          p2 = p1;
          p1 = ((2.0 * j - 1.0) * zd * p2 - (j - 1.0) * p3) / j;
        }
        pp = n * (zd * p1 - p2) / (zd * zd - 1.0);
        z1 = zd;
        zd = z1 - p1 / pp;
      } while (std::abs(zd - z1) > 1e-14 && ++iter < 100);
    }
    W z = from_double(zd);
    W dp{};
    for (int step = 0; step < 3; ++step) {
      W p1 = one(), p2 = from_ll(0);
      for (int j = 1; j <= n; ++j) {
        const W p3 = p2;
        p2 = p1;
        p1 = div(sub(mul(mul_s(z, static_cast<double>(2 * j - 1)), p2),
                     mul_s(p3, static_cast<double>(j - 1))),
                 from_ll(j));
      }
      dp = div(mul_s(sub(mul(z, p1), p2), static_cast<double>(n)), sub(mul(z, z), one()));
      z = sub(z, div(p1, dp));
    }
    const W w = div(from_ll(2), mul(sub(one(), mul(z, z)), mul(dp, dp)));
    rule[i - 1] = {neg(z), w};
    rule[n - i] = {z, w};
  }
  return cache.emplace(n, std::move(rule)).first->second;
}

}  // namespace levinson::wide
