#pragma once
// Command-line surface: eval, verify, gauss, vtable, mordell, xray.
// Machine-readable output (JSON by default, complex numbers as [re, im]
// arrays); exit code 0 on success / verification pass, 2 on verification
// failure, 1 on usage errors.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "levinson/cli_support.hpp"
#include "levinson/levinson.hpp"
#include "levinson/mordell.hpp"
#include "levinson/xray.hpp"

namespace levinson::cli {

namespace detail_cli {

inline nlohmann::json cpx(const Complex& z) { return nlohmann::json::array({z.real(), z.imag()}); }

inline Complex parse_complex_pair(const std::string& text, const char* what) {
  const auto comma = text.find(',');
  if (comma == std::string::npos)
    throw std::invalid_argument(std::string(what) + ": expected RE,IM (got '" + text + "')");
  try {
    return {std::stod(text.substr(0, comma)), std::stod(text.substr(comma + 1))};
  } catch (const std::exception&) {
    throw std::invalid_argument(std::string(what) + ": expected RE,IM (got '" + text + "')");
  }
}

struct PairSweep {
  double levmain_max = 0.0, lfstar_max = 0.0;
  Complex argmax{0.0, 0.0};
};

// E:levmain and Lf* residuals of f(., tau) over the published 12-point grid.
inline PairSweep pair_sweep(const TauParam& tau, const EvalOptions& o) {
  PairSweep sweep;
  for (const Complex& s : pair_check_grid()) {
    try {
      const Complex hs = std::exp(special::h_log(s));
      const Complex h1 = std::exp(special::h_log(1.0 - s));
      const Complex hz = hs * special::zeta_em(s);
      const Complex fs = f_eval(s, tau, o).value;
      const Complex fstar = std::conj(f_eval(std::conj(1.0 - s), tau.inv_conj(), o).value);
      const double r = std::abs(hz - hs * fs - h1 * fstar) / (1.0 + std::abs(hz));
      if (r > sweep.levmain_max) {
        sweep.levmain_max = r;
        sweep.argmax = s;
      }
      const Complex lhs = std::conj(f_eval(std::conj(s), tau, o).value);
      const Complex rhs = f_eval(s, tau.neg_conj(), o).value;
      const double lf = std::abs(lhs - rhs) / (1.0 + std::abs(rhs));
      sweep.lfstar_max = std::max(sweep.lfstar_max, lf);
    } catch (const std::domain_error&) {
      // skip-point: grid point at a pole of chi / zeta
    }
  }
  return sweep;
}

struct ExampleCheck {
  const char* name;
  ExampleTag tag;
  TauParam tau;
};

inline std::vector<ExampleCheck> example_checks() {
  return {{"R_-1", ExampleTag::m1, TauParam::rational(-1, 1)},
          {"R_-4/3", ExampleTag::m43, TauParam::rational(-4, 3)},
          {"R_-3/2", ExampleTag::m32, TauParam::rational(-3, 2)},
          {"R_-2", ExampleTag::m2, TauParam::rational(-2, 1)},
          {"R_-3", ExampleTag::m3, TauParam::rational(-3, 1)}};
}

}  // namespace detail_cli

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Riemann auxiliary function toolkit"};
  app.require_subcommand(1);

  CliConfig cfg;
  cfg.apply_env();
  app.add_option("--quad-tol", cfg.quad_tol, "quadrature truncation target [1e-14, 1e-4]");
  app.add_option("--quad-panels", cfg.quad_panels, "panel count override (0 = automatic)");
  app.add_option("--quad-nodes", cfg.quad_nodes, "Gauss-Legendre nodes per panel");
  app.add_option("--threads", cfg.threads, "thread budget (0 = hardware)");
  std::string global_format = "json";
  app.add_option("--format", global_format, "output format (json|csv|text)");

  // ---- eval ------------------------------------------------------------------
  auto* eval = app.add_subcommand("eval", "evaluate one function at one point");
  eval->require_subcommand(1);
  std::string tau_spec, s_spec;
  double t_arg = 0.0;
  bool literal = false;
  auto* ev_rtau = eval->add_subcommand("rtau", "Riemann auxiliary function R_tau(s)");
  ev_rtau->add_option("--tau", tau_spec, "tau: A/B, A, i, or RE+IMi")->required();
  ev_rtau->add_option("--s", s_spec, "point s as RE,IM")->required();
  ev_rtau->add_flag("--theorem-literal", literal,
                    "use the printed rational-parameter variant (comparison only)");
  auto* ev_zeta = eval->add_subcommand("zeta", "Euler-Maclaurin zeta(s)");
  ev_zeta->add_option("--s", s_spec)->required();
  auto* ev_l = eval->add_subcommand("L", "Levinson's L(s)");
  ev_l->add_option("--s", s_spec)->required();
  auto* ev_ri = eval->add_subcommand("ri", "Riemann's first example R_i(s)");
  ev_ri->add_option("--s", s_spec)->required();
  auto* ev_z = eval->add_subcommand("z", "Hardy Z(t)");
  ev_z->add_option("--t", t_arg)->required();
  auto* ev_theta = eval->add_subcommand("theta", "Riemann-Siegel theta(t)");
  ev_theta->add_option("--t", t_arg)->required();

  // ---- verify ----------------------------------------------------------------
  auto* verify = app.add_subcommand("verify", "verify an identity, exit 2 on failure");
  verify->require_subcommand(1);
  double t_min = 2.0, t_max = 60.0, tol = 1e-6;
  int points = 25;
  auto* vf_id = verify->add_subcommand("identity", "Z(t) = 2 Re(e^{i theta} R_tau)");
  vf_id->add_option("--tau", tau_spec)->required();
  vf_id->add_option("--t-min", t_min);
  vf_id->add_option("--t-max", t_max);
  vf_id->add_option("--points", points);
  vf_id->add_option("--tol", tol);
  double pair_tol = 1e-8;
  auto* vf_pair = verify->add_subcommand("pair", "Levinson pair identity and Lf*");
  vf_pair->add_option("--tau", tau_spec)->required();
  vf_pair->add_option("--tol", pair_tol);
  double ex_tol = 1e-9;
  auto* vf_ex = verify->add_subcommand("examples", "the five printed R_tau displays");
  vf_ex->add_option("--tol", ex_tol);

  // ---- gauss / vtable ----------------------------------------------------------
  long long ga = 1, gb = 1;
  auto* gauss_cmd = app.add_subcommand("gauss", "quadratic Gauss sum S(a,b)");
  gauss_cmd->add_option("--a", ga)->required();
  gauss_cmd->add_option("--b", gb)->required();
  auto* vt_cmd = app.add_subcommand("vtable", "finite Fourier coefficients V_tau(n)");
  vt_cmd->add_option("--tau", tau_spec, "rational tau as A/B")->required();

  // ---- mordell -------------------------------------------------------------------
  std::string z_spec, mtau_spec, rat_spec;
  auto* mord = app.add_subcommand("mordell", "Mordell integral Phi(z, tau)");
  mord->add_option("--z", z_spec, "z as RE,IM")->required();
  auto* mtau_opt = mord->add_option("--tau", mtau_spec, "tau as RE,IM (quadrature)");
  auto* mrat_opt = mord->add_option("--rat", rat_spec, "rational tau [-]A/B (closed form)");
  mtau_opt->excludes(mrat_opt);

  // ---- xray ---------------------------------------------------------------------
  std::string func_id, window_spec, out_path, xr_format = "csv";
  int nx = 200, ny = 200;
  auto* xray_cmd = app.add_subcommand("xray", "zero-curve extraction over a window");
  xray_cmd->add_option("--func", func_id, "rtau|h_rtau|z|zeta|L|phi-slice")->required();
  xray_cmd->add_option("--tau", tau_spec, "tau (required for rtau/h_rtau/phi-slice)");
  xray_cmd->add_option("--window", window_spec, "X0,X1,Y0,Y1")->required();
  xray_cmd->add_option("--nx", nx)->required();
  xray_cmd->add_option("--ny", ny)->required();
  xray_cmd->add_option("--out", out_path, "output file")->required();
  xray_cmd->add_option("--format", xr_format, "csv|json");

  std::vector<std::string> argv_like = args;
  try {
    std::vector<const char*> argv;
    argv.push_back("levinson");
    for (const auto& a : argv_like) argv.push_back(a.c_str());
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return 1;
  }

  nlohmann::json j;
  try {
    cfg.validate();
    const EvalOptions opts = cfg.eval_options();

    if (ev_rtau->parsed()) {
      EvalOptions o = opts;
      o.literal_theorem = literal;
      const TauParam tau = parse_tau(tau_spec);
      const Complex s = detail_cli::parse_complex_pair(s_spec, "--s");
      const auto r = r_tau(s, tau, o);
      j = {{"tau", tau.str()},
           {"s", detail_cli::cpx(s)},
           {"value", detail_cli::cpx(r.value)},
           {"err_estimate", r.err_estimate},
           {"nodes_used", r.nodes_used}};
      out << j.dump() << "\n";
      return 0;
    }
    if (ev_zeta->parsed() || ev_l->parsed() || ev_ri->parsed()) {
      const Complex s = detail_cli::parse_complex_pair(s_spec, "--s");
      Complex v;
      const char* name;
      if (ev_zeta->parsed()) {
        v = special::zeta_em(s);
        name = "zeta";
      } else if (ev_l->parsed()) {
        v = levinson_L(s);
        name = "L";
      } else {
        v = r_i_theta_integral(s);
        name = "ri";
      }
      j = {{"func", name}, {"s", detail_cli::cpx(s)}, {"value", detail_cli::cpx(v)}};
      out << j.dump() << "\n";
      return 0;
    }
    if (ev_z->parsed()) {
      j = {{"func", "z"}, {"t", t_arg}, {"value", special::hardy_z(t_arg)}};
      out << j.dump() << "\n";
      return 0;
    }
    if (ev_theta->parsed()) {
      j = {{"func", "theta"}, {"t", t_arg}, {"value", special::theta_rs(t_arg)}};
      out << j.dump() << "\n";
      return 0;
    }

    if (vf_id->parsed()) {
      const TauParam tau = parse_tau(tau_spec);
      const auto sweep = verify_identity(tau, t_min, t_max, points, opts);
      j = {{"tau", tau.str()},
           {"grid", {{"t_min", t_min}, {"t_max", t_max}, {"points", points}}},
           {"max_residual", sweep.max_residual},
           {"argmax_t", sweep.argmax_t},
           {"tol", tol}};
      out << j.dump() << "\n";
      if (!(sweep.max_residual <= tol)) {
        err << "verify identity failed: max residual " << sweep.max_residual << " at t = "
            << sweep.argmax_t << "\n";
        return 2;
      }
      return 0;
    }
    if (vf_pair->parsed()) {
      const TauParam tau = parse_tau(tau_spec);
      const auto sweep = detail_cli::pair_sweep(tau, opts);
      j = {{"tau", tau.str()},
           {"grid", "pair12"},
           {"max_residual", sweep.levmain_max},
           {"argmax", detail_cli::cpx(sweep.argmax)},
           {"lfstar_max", sweep.lfstar_max},
           {"tol", pair_tol}};
      out << j.dump() << "\n";
      if (!(sweep.levmain_max <= pair_tol && sweep.lfstar_max <= pair_tol)) {
        err << "verify pair failed: levmain " << sweep.levmain_max << ", lfstar "
            << sweep.lfstar_max << "\n";
        return 2;
      }
      return 0;
    }
    if (vf_ex->parsed()) {
      const Complex pts[5] = {{0.5, 5.0}, {0.3, 9.0}, {0.8, 13.0}, {0.45, 17.0}, {0.6, 21.0}};
      double worst = 0.0;
      nlohmann::json rows = nlohmann::json::array();
      for (const auto& chk : detail_cli::example_checks()) {
        double m = 0.0;
        for (const Complex& s : pts) {
          const Complex lhs = example_formula(chk.tag, s, opts);
          const Complex rhs = r_tau(s, chk.tau, opts).value;
          m = std::max(m, std::abs(lhs - rhs));
        }
        rows.push_back({{"example", chk.name}, {"max_abs_diff", m}});
        worst = std::max(worst, m);
      }
      j = {{"examples", rows}, {"max_residual", worst}, {"tol", ex_tol}};
      out << j.dump() << "\n";
      return worst <= ex_tol ? 0 : 2;
    }

    if (gauss_cmd->parsed()) {
      const auto g = gauss::gauss_sum_classify(ga, gb);
      j = {{"a", ga},
           {"b", gb},
           {"value", detail_cli::cpx(g.value)},
           {"magnitude_class", gauss::magnitude_class_name(g.magnitude_class)},
           {"scale", g.scale}};
      if (g.unity_power)
        j["unity_power"] = *g.unity_power;
      else
        j["unity_power"] = nullptr;
      out << j.dump() << "\n";
      return 0;
    }
    if (vt_cmd->parsed()) {
      const TauParam tau = parse_tau(tau_spec);
      if (tau.kind != TauParam::Kind::rational)
        throw std::invalid_argument("vtable: tau must be rational A/B");
      const auto vt = gauss::v_table(tau.rat);
      out << "n,re,im,abs\n";
      char buf[128];
      for (long long n = 0; n < vt.period; ++n) {
        std::snprintf(buf, sizeof buf, "%lld,%.17g,%.17g,%.17g\n", n, vt.values[n].real(),
                      vt.values[n].imag(), std::abs(vt.values[n]));
        out << buf;
      }
      return 0;
    }

    if (mord->parsed()) {
      const Complex z = detail_cli::parse_complex_pair(z_spec, "--z");
      if (!mtau_opt->count() && !mrat_opt->count())
        throw std::invalid_argument("mordell: one of --tau or --rat is required");
      if (mtau_opt->count()) {
        const Complex tau = detail_cli::parse_complex_pair(mtau_spec, "--tau");
        const auto r = mordell::phi(z, tau);
        j = {{"z", detail_cli::cpx(z)},
             {"tau", detail_cli::cpx(tau)},
             {"value", detail_cli::cpx(r.value)},
             {"err_estimate", r.err_estimate}};
      } else {
        long long a = 0, b = 1;
        const auto slash = rat_spec.find('/');
        a = std::atoll(rat_spec.substr(0, slash).c_str());
        if (slash != std::string::npos) b = std::atoll(rat_spec.substr(slash + 1).c_str());
        if (a == 0 || b <= 0) throw std::invalid_argument("mordell: bad --rat A/B");
        const Complex v =
            a > 0 ? mordell::phi_rational_pos(z, a, b) : mordell::phi_rational_neg(z, -a, b);
        j = {{"z", detail_cli::cpx(z)},
             {"rat", rat_spec},
             {"value", detail_cli::cpx(v)},
             {"err_estimate", 0.0}};
      }
      out << j.dump() << "\n";
      return 0;
    }

    if (xray_cmd->parsed()) {
      xray::Window w{};
      {
        double vals[4];
        std::string rest = window_spec;
        for (int k = 0; k < 4; ++k) {
          const auto comma = rest.find(',');
          const std::string tok = k < 3 ? rest.substr(0, comma) : rest;
          if (k < 3 && comma == std::string::npos)
            throw std::invalid_argument("--window: expected X0,X1,Y0,Y1");
          vals[k] = std::stod(tok);
          if (k < 3) rest = rest.substr(comma + 1);
        }
        w = xray::Window{vals[0], vals[1], vals[2], vals[3], nx, ny};
      }
      xray::GridParams p;
      p.eval = opts;
      if (!tau_spec.empty()) p.tau = parse_tau(tau_spec);
      const auto grid = xray::grid_eval(func_id, p, w, cfg.threads);
      const auto set = xray::marching_segments(grid, func_id);
      std::ofstream f(out_path, std::ios::binary);
      if (!f) throw std::runtime_error("xray: cannot open output file " + out_path);
      if (xr_format == "json")
        xray::write_json(set, f);
      else
        xray::write_csv(set, f);
      j = {{"func", func_id},
           {"window", {w.x0, w.x1, w.y0, w.y1}},
           {"nx", nx},
           {"ny", ny},
           {"segments", set.segments.size()},
           {"out", out_path}};
      out << j.dump() << "\n";
      return 0;
    }
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  err << "error: no subcommand executed\n";
  return 1;
}

}  // namespace levinson::cli
