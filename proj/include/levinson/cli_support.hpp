#pragma once
// Library-side pieces of the command-line surface: the tau grammar and the
// shared configuration (quadrature knobs, output format, thread budget).
//
// tau grammar:  [-]A/B | [-]A | i | RE+IMi | RE-IMi
// rejecting tau = 0, Im tau < 0, and non-rational real tau (no evaluation
// algorithm exists for irrational real tau).

#include <cstdlib>
#include <regex>
#include <stdexcept>
#include <string>

#include "levinson/levinson.hpp"

namespace levinson::cli {

enum class OutputFormat { json, csv, text };

struct CliConfig {
  double quad_tol = 1e-12;
  int quad_panels = 0;  // 0: automatic
  int quad_nodes = 16;
  OutputFormat output_format = OutputFormat::json;
  int threads = 0;  // 0: hardware concurrency

  void validate() const {
    if (!(quad_tol >= 1e-14 && quad_tol <= 1e-4))
      throw std::invalid_argument("--quad-tol must lie in [1e-14, 1e-4]");
    if (quad_panels < 0 || quad_nodes < 4)
      throw std::invalid_argument("--quad-panels must be >= 0 and --quad-nodes >= 4");
    if (static_cast<long long>(quad_panels > 0 ? quad_panels : 1024) * quad_nodes > 1000000)
      throw std::invalid_argument("panels * nodes must not exceed 1e6");
  }
  EvalOptions eval_options() const {
    EvalOptions o;
    o.quad_tol = quad_tol;
    o.panels_override = quad_panels;
    o.nodes_per_panel = quad_nodes;
    return o;
  }
  // flags override the environment; the environment overrides defaults
  void apply_env() {
    if (const char* v = std::getenv("LEVINSON_QUAD_TOL")) {
      char* end = nullptr;
      const double t = std::strtod(v, &end);
      if (end != v && t > 0.0) quad_tol = t;
    }
    if (const char* v = std::getenv("LEVINSON_THREADS")) threads = std::atoi(v);
  }
};

inline TauParam parse_tau(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("tau: empty specification");
  if (text == "i") return TauParam::upper(Complex(0.0, 1.0));
  static const std::regex rational_re(R"(^([+-]?\d+)(?:/(\d+))?$)");
  static const std::regex complex_re(R"(^([+-]?(?:\d+\.?\d*|\.\d+))([+-](?:\d+\.?\d*|\.\d+))i$)");
  std::smatch m;
  if (std::regex_match(text, m, rational_re)) {
    const long long a = std::atoll(m[1].str().c_str());
    const long long b = m[2].matched ? std::atoll(m[2].str().c_str()) : 1;
    if (a == 0) throw std::invalid_argument("tau must be nonzero");
    if (b == 0) throw std::invalid_argument("tau: zero denominator");
    return TauParam::rational(a, b);
  }
  if (std::regex_match(text, m, complex_re)) {
    const double re = std::stod(m[1].str());
    const double im = std::stod(m[2].str());
    if (im < 0.0)
      throw std::invalid_argument("tau must lie in the closed upper half-plane");
    if (im == 0.0)
      throw std::invalid_argument(
          "real tau must be given as a rational A/B (irrational real tau is unsupported)");
    if (re == 0.0 && im == 0.0) throw std::invalid_argument("tau must be nonzero");
    return TauParam::upper(Complex(re, im));
  }
  throw std::invalid_argument("tau: expected A/B, A, i, or RE+IMi (got '" + text + "')");
}

}  // namespace levinson::cli
