#pragma once
// Grid evaluation over a rectangular window of the s-plane and extraction of
// the level curves Re f = 0 and Im f = 0 (the "x-ray" of f) as polyline
// segments via marching squares with linear edge interpolation.
//
// Grid functions: rtau, h_rtau (= h(s) R_tau(s)), z (e^{i theta(t)} zeta(s),
// real on the critical line), zeta, L, phi-slice (Mordell Phi over the
// z-plane at fixed tau). Rows have constant Im s, so the contour data for
// the quadrature-backed functions is precomputed once per row and reused
// across columns (one complex exp per node per point).
//
// Evaluation failures mark cells NaN; marching squares skips NaN cells; more
// than 1% failures aborts the grid.

#include <atomic>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <optional>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include "levinson/levinson.hpp"
#include "levinson/mordell.hpp"

namespace levinson::xray {

struct Window {
  double x0, x1, y0, y1;
  int nx, ny;

  void validate() const {
    if (!(x0 < x1) || !(y0 < y1) || nx < 2 || ny < 2)
      throw std::invalid_argument("window: need x0 < x1, y0 < y1, nx, ny >= 2");
    if (static_cast<long long>(nx) * ny > 40000000LL)
      throw std::invalid_argument("window: nx * ny exceeds the 4e7 memory guard");
  }
  double x_at(int ix) const { return x0 + (x1 - x0) * ix / (nx - 1); }
  double y_at(int iy) const { return y0 + (y1 - y0) * iy / (ny - 1); }
};

struct Grid {
  Window window;
  std::vector<Complex> values;  // row-major, rows indexed by iy

  const Complex& at(int ix, int iy) const {
    return values[static_cast<std::size_t>(iy) * window.nx + ix];
  }
};

// Generic engine: make_row(t) returns the column evaluator for one row.
// Rows are distributed over threads in fixed chunks; results land in a
// preallocated buffer, so output is identical for any thread count.
template <typename RowFactory>
Grid grid_map_rows(RowFactory&& make_row, const Window& w, int threads = 0) {
  w.validate();
  Grid g{w, std::vector<Complex>(static_cast<std::size_t>(w.nx) * w.ny)};
  int nt = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
  if (nt < 1) nt = 1;
  nt = std::min(nt, w.ny);
  std::atomic<long long> failures{0};
  const double nan = std::numeric_limits<double>::quiet_NaN();
  auto work = [&](int iy_begin, int iy_end) {
    for (int iy = iy_begin; iy < iy_end; ++iy) {
      const double t = w.y_at(iy);
      Complex* row = g.values.data() + static_cast<std::size_t>(iy) * w.nx;
      try {
        auto col = make_row(t);
        for (int ix = 0; ix < w.nx; ++ix) {
          try {
            row[ix] = col(w.x_at(ix));
          } catch (...) {
            row[ix] = Complex(nan, nan);
            ++failures;
          }
        }
      } catch (...) {
        for (int ix = 0; ix < w.nx; ++ix) row[ix] = Complex(nan, nan);
        failures += w.nx;
      }
    }
  };
  if (nt == 1) {
    work(0, w.ny);
  } else {
    std::vector<std::thread> pool;
    const int chunk = (w.ny + nt - 1) / nt;
    for (int k = 0; k < nt; ++k) {
      const int b = k * chunk, e = std::min(w.ny, b + chunk);
      if (b < e) pool.emplace_back(work, b, e);
    }
    for (auto& th : pool) th.join();
  }
  if (failures.load() * 100 > static_cast<long long>(g.values.size()))
    throw std::runtime_error("grid_eval: more than 1% of grid points failed");
  return g;
}

namespace detail_xray {

// Row evaluator for R_tau: one or two per-row contour profiles plus the
// anchor-translation main sums.
struct RTauRow {
  struct Part {
    quad::LineProfile profile;
    double prefactor;
    int shift;
  };
  std::vector<Part> parts;
  double weight = 1.0;  // 1 for |tau| = 1, 1/2 otherwise

  Complex eval(const Complex& s) const {
    Complex total = 0.0;
    for (const Part& p : parts) {
      Complex v = p.prefactor * p.profile.eval(-s);
      v += detail_lev::main_sum(s, p.shift);
      total += v;
    }
    return weight * total;
  }
};

inline RTauRow::Part make_f_part(double t, const TauParam& tau, const EvalOptions& o) {
  RTauRow::Part part;
  if (tau.kind == TauParam::Kind::rational) {
    const auto vt = gauss::v_table(tau.rat);
    const auto ig = detail_lev::rational_integrand(vt, false);
    const double tval = tau.rat.value();
    const auto fc = detail_lev::f_contour(std::abs(tval),
                                          detail_lev::rational_direction(tau.rat),
                                          Complex(0.5, t), o, tau.rat.num < 0);
    auto base = [&](Complex x) {
      Complex trig = 0.0;
      for (const auto& tt : ig.terms) trig += tt.coeff * std::cos(tt.freq * x);
      return std::exp(Complex(0.0, -kPi) * tval * x * x) * trig /
             (std::exp(Complex(0.0, kPi) * x) - std::exp(Complex(0.0, -kPi) * x));
    };
    part.profile = quad::make_line_profile(base, [](Complex x) { return std::log(x); },
                                           fc.spec);
    part.prefactor = ig.prefactor;
    part.shift = fc.anchor_shift;
    return part;
  }
  const Complex tv = tau.value;
  const double nf = std::sqrt(41.45 / (kPi * tv.imag()));
  const int N = std::max(1, static_cast<int>(std::ceil(nf)));
  std::vector<Complex> coeff(N + 1);
  for (int n = 1; n <= N; ++n)
    coeff[n] =
        std::exp(Complex(0.0, kPi) * tv * static_cast<double>(n) * static_cast<double>(n));
  const auto fc = detail_lev::f_contour(std::abs(tv), -kPi / 4.0 - 0.5 * std::arg(tv),
                                        Complex(0.5, t), o, tv.real() <= 0.0);
  auto base = [&](Complex x) {
    const Complex x2 = x * x;
    Complex ksum = 1.0 / x;
    for (int n = 1; n <= N; ++n)
      ksum += 2.0 * x * coeff[n] / (x2 - static_cast<double>(n) * static_cast<double>(n));
    return std::exp(Complex(0.0, -kPi) * tv * x2) * ksum * Complex(0.0, -0.5 / kPi);
  };
  part.profile =
      quad::make_line_profile(base, [](Complex x) { return std::log(x); }, fc.spec);
  part.prefactor = 1.0;
  part.shift = fc.anchor_shift;
  return part;
}

inline RTauRow make_rtau_row(double t, const TauParam& tau, EvalOptions o) {
  o.enforce_box = false;  // the Figure-1 window reaches past the single-point box
  RTauRow row;
  row.parts.push_back(make_f_part(t, tau, o));
  if (!tau.unit_modulus()) {
    row.parts.push_back(make_f_part(t, tau.inv_conj(), o));
    row.weight = 0.5;
  }
  return row;
}

}  // namespace detail_xray

struct GridParams {
  std::optional<TauParam> tau;  // rtau / h_rtau / phi-slice
  EvalOptions eval;
};

inline Grid grid_eval(const std::string& func_id, const GridParams& params, const Window& w,
                      int threads = 0) {
  if (func_id == "rtau" || func_id == "h_rtau") {
    if (!params.tau) throw std::invalid_argument(func_id + ": --tau required");
    const bool with_h = func_id == "h_rtau";
    const TauParam tau = *params.tau;
    const EvalOptions o = params.eval;
    return grid_map_rows(
        [tau, o, with_h](double t) {
          auto row = detail_xray::make_rtau_row(t, tau, o);
          return [row, t, with_h](double sigma) {
            const Complex s(sigma, t);
            const Complex v = row.eval(s);
            return with_h ? std::exp(special::h_log(s)) * v : v;
          };
        },
        w, threads);
  }
  if (func_id == "z") {
    return grid_map_rows(
        [](double t) {
          const Complex rot = std::polar(1.0, special::theta_rs(t));
          return [rot, t](double sigma) { return rot * special::zeta_em(Complex(sigma, t)); };
        },
        w, threads);
  }
  if (func_id == "zeta") {
    return grid_map_rows(
        [](double t) {
          return [t](double sigma) { return special::zeta_em(Complex(sigma, t)); };
        },
        w, threads);
  }
  if (func_id == "L") {
    return grid_map_rows(
        [](double t) {
          return [t](double sigma) { return levinson_L(Complex(sigma, t)); };
        },
        w, threads);
  }
  if (func_id == "phi-slice") {
    if (!params.tau) throw std::invalid_argument("phi-slice: --tau required");
    const Complex tau = params.tau->value;
    // one profile serves the whole window: expo = 2 pi i x, eval at w = z
    const double alpha = std::arg(tau);
    double theta = 0.75 * kPi - 0.5 * alpha;
    theta = std::min(5.0 * kPi / 6.0 - 0.02, std::max(kPi / 6.0 + 0.02, theta));
    const double c = -kPi * std::abs(tau) * std::sin(alpha + 2.0 * theta);
    if (!(c > 0.0)) throw std::runtime_error("phi-slice: no decay for this tau");
    const double zmax = std::max({std::abs(Complex(w.x0, w.y0)), std::abs(Complex(w.x1, w.y0)),
                                  std::abs(Complex(w.x0, w.y1)), std::abs(Complex(w.x1, w.y1))});
    const double U = quad::auto_truncate(c, params.eval.quad_tol) + 1.5 * kPi * zmax / c + 1.0;
    quad::ContourSpec spec;
    spec.anchor = Complex(0.5, 0.0);
    spec.direction_angle = theta;
    spec.half_length = U;
    spec.panels = 24 * std::max(1, static_cast<int>(std::ceil(U / 3.5)));
    spec.nodes_per_panel = 16;
    spec.integer_pole_guard = true;
    auto base = [&](Complex x) {
      return std::exp(Complex(0.0, -kPi) * tau * x * x) /
             (std::exp(Complex(0.0, kPi) * x) - std::exp(Complex(0.0, -kPi) * x));
    };
    auto profile = quad::make_line_profile(
        base, [](Complex x) { return Complex(0.0, 2.0 * kPi) * x; }, spec);
    return grid_map_rows(
        [profile](double t) {
          return [profile, t](double sigma) { return profile.eval(Complex(sigma, t)); };
        },
        w, threads);
  }
  throw std::invalid_argument("grid_eval: unknown function id '" + func_id + "'");
}

// ---- marching squares ----------------------------------------------------------

enum class Curve { re_zero, im_zero };

struct Segment {
  Curve curve;
  double x1, y1, x2, y2;
};

struct XRaySegmentSet {
  std::vector<Segment> segments;
  Window window;
  std::string func_id;
};

namespace detail_xray {

struct Pt {
  double x, y;
};

template <typename Field>
void march_field(const Grid& g, Curve which, Field&& field, std::vector<Segment>& out) {
  const Window& w = g.window;
  for (int iy = 0; iy + 1 < w.ny; ++iy) {
    const double ylo = w.y_at(iy), yhi = w.y_at(iy + 1);
    for (int ix = 0; ix + 1 < w.nx; ++ix) {
      const double v00 = field(g.at(ix, iy));
      const double v10 = field(g.at(ix + 1, iy));
      const double v11 = field(g.at(ix + 1, iy + 1));
      const double v01 = field(g.at(ix, iy + 1));
      if (!std::isfinite(v00) || !std::isfinite(v10) || !std::isfinite(v11) ||
          !std::isfinite(v01))
        continue;
      const int code = (v00 >= 0.0 ? 1 : 0) | (v10 >= 0.0 ? 2 : 0) | (v11 >= 0.0 ? 4 : 0) |
                       (v01 >= 0.0 ? 8 : 0);
      if (code == 0 || code == 15) continue;
      const double xlo = w.x_at(ix), xhi = w.x_at(ix + 1);
      auto lerp = [](double a, double b) { return a / (a - b); };
      const Pt bottom{xlo + (xhi - xlo) * lerp(v00, v10), ylo};
      const Pt right{xhi, ylo + (yhi - ylo) * lerp(v10, v11)};
      const Pt top{xlo + (xhi - xlo) * lerp(v01, v11), yhi};
      const Pt left{xlo, ylo + (yhi - ylo) * lerp(v00, v01)};
      auto emit = [&](const Pt& p, const Pt& q) {
        out.push_back({which, p.x, p.y, q.x, q.y});
      };
      switch (code) {
        case 1: case 14: emit(bottom, left); break;
        case 2: case 13: emit(bottom, right); break;
        case 3: case 12: emit(left, right); break;
        case 4: case 11: emit(right, top); break;
        case 6: case 9: emit(bottom, top); break;
        case 7: case 8: emit(top, left); break;
        case 5: case 10: {  // saddle: resolve by the cell-average sign
          const bool avg_pos = (v00 + v10 + v11 + v01) >= 0.0;
          const bool diag_pos = code == 5;  // v00 and v11 on the positive side
          if (diag_pos == avg_pos) {
            emit(bottom, right);
            emit(top, left);
          } else {
            emit(bottom, left);
            emit(right, top);
          }
          break;
        }
        default: break;
      }
    }
  }
}

}  // namespace detail_xray

inline XRaySegmentSet marching_segments(const Grid& g, const std::string& func_id = "") {
  XRaySegmentSet set;
  set.window = g.window;
  set.func_id = func_id;
  detail_xray::march_field(g, Curve::re_zero, [](const Complex& v) { return v.real(); },
                           set.segments);
  detail_xray::march_field(g, Curve::im_zero, [](const Complex& v) { return v.imag(); },
                           set.segments);
  return set;
}

// CSV schema: header curve,x1,y1,x2,y2; 9 significant digits, LF endings.
inline void write_csv(const XRaySegmentSet& set, std::ostream& os) {
  os << "curve,x1,y1,x2,y2\n";
  char buf[160];
  for (const Segment& s : set.segments) {
    std::snprintf(buf, sizeof buf, "%s,%.9g,%.9g,%.9g,%.9g\n",
                  s.curve == Curve::re_zero ? "re_zero" : "im_zero", s.x1, s.y1, s.x2, s.y2);
    os << buf;
  }
}

inline void write_json(const XRaySegmentSet& set, std::ostream& os) {
  os << "{\"func\":\"" << set.func_id << "\",\"segments\":[";
  char buf[200];
  bool first = true;
  for (const Segment& s : set.segments) {
    std::snprintf(buf, sizeof buf, "%s{\"curve\":\"%s\",\"p\":[%.9g,%.9g,%.9g,%.9g]}",
                  first ? "" : ",", s.curve == Curve::re_zero ? "re_zero" : "im_zero", s.x1,
                  s.y1, s.x2, s.y2);
    os << buf;
    first = false;
  }
  os << "]}\n";
}

// Number of segments of the given family that straddle the vertical line
// sigma = x strictly.
inline int count_vertical_crossings(const XRaySegmentSet& set, Curve which, double x) {
  int n = 0;
  for (const Segment& s : set.segments)
    if (s.curve == which && (s.x1 - x) * (s.x2 - x) < 0.0) ++n;
  return n;
}

}  // namespace levinson::xray
