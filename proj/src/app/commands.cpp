#include "lindosc/app/commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <sstream>

#include "lindosc/app/output.hpp"
#include "lindosc/app/parallel.hpp"
#include "lindosc/app/validation.hpp"
#include "lindosc/errors.hpp"
#include "lindosc/gaussian.hpp"
#include "lindosc/lindblad.hpp"
#include "lindosc/observables.hpp"

namespace lindosc::app {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

std::ostream& out_of(const CommandContext& ctx) { return ctx.out ? *ctx.out : std::cout; }
std::ostream& err_of(const CommandContext& ctx) { return ctx.err ? *ctx.err : std::cerr; }

std::ofstream open_output(const CommandContext& ctx, const std::string& name) {
  const auto path = ctx.out_dir / name;
  std::ofstream f(path);
  if (!f) throw ConfigError("cannot write " + path.string());
  return f;
}

void info(const CommandContext& ctx, const std::string& line) {
  if (!ctx.quiet) out_of(ctx) << line << "\n";
}

void warn(const CommandContext& ctx, const std::string& line) {
  err_of(ctx) << "warning: " << line << "\n";
}

// Period used for "one cycle" of the motion: the drive period when there is
// one, else the free oscillation period.
double cycle_period(const RunConfig& cfg) {
  const double W = cfg.drive.Omega();
  return (cfg.drive.kind() != Drive::Kind::none && W > 0.0) ? two_pi / W
                                                            : two_pi / cfg.params.omega;
}

// Smallest window holding every centre with `margin` Husimi widths around it.
PhaseWindow window_around(const std::vector<Complex>& centres, double b, double omega, int nx,
                          int np, double margin) {
  const double sx = margin / std::sqrt(b * omega);
  const double sp = margin * std::sqrt(omega / b);
  PhaseWindow w{1e300, -1e300, 1e300, -1e300, nx, np};
  for (const Complex& a : centres) {
    w.x_min = std::min(w.x_min, x_of(a, omega));
    w.x_max = std::max(w.x_max, x_of(a, omega));
    w.p_min = std::min(w.p_min, p_of(a, omega));
    w.p_max = std::max(w.p_max, p_of(a, omega));
  }
  w.x_min -= sx;
  w.x_max += sx;
  w.p_min -= sp;
  w.p_max += sp;
  return w;
}

std::string fixed_index(std::size_t i) {
  std::ostringstream os;
  os << std::setw(3) << std::setfill('0') << i;
  return os.str();
}

}  // namespace

PhaseWindow limit_cycle_window(const LindbladParams& params, const Drive& drive, int nx, int np,
                               double margin) {
  const double W = drive.Omega();
  const double T = W > 0.0 ? two_pi / W : two_pi / params.omega;
  constexpr int samples = 512;
  std::vector<Complex> centres;
  for (int i = 0; i < samples; ++i)
    centres.push_back(
        forced_response_limit(T * i / samples, params.omega, params.gamma(), drive));
  return window_around(centres, 1.0 - params.nu / params.mu, params.omega, nx, np, margin);
}

int cmd_evolve(const RunConfig& cfg, const CommandContext& ctx) {
  validate_config(cfg, true);
  const auto grid = cfg.grid.time_grid();
  const DensityMatrix rho0 = initial_density(cfg);
  const auto ops = ladder_ops(rho0.dim());
  const Complex a0 = expectation(ops.a, rho0);
  const double n0 = expectation(ops.n, rho0).real();
  const auto g0 = cfg.initial.gaussian();

  IntegratorOptions opts;
  opts.dt = cfg.grid.dt;
  opts.renorm_every = cfg.grid.renorm_every;
  const Trajectory tr = evolve(rho0, grid, cfg.params, cfg.drive, opts);
  for (const auto& w : tr.warnings) warn(ctx, w);

  auto f = open_output(ctx, "trajectory.tsv");
  write_header(f, cfg, "evolve",
               {"step = " + num(tr.step), "steps = " + std::to_string(tr.steps_taken),
                "gaussian_initial_state = " + std::string(g0 ? "yes" : "no")});
  f << "t\tre_a\tim_a\tn\tx\tp\tS\tS_num\tpurity\ttrace_err\tmin_eig\tleak"
       "\tre_a_exact\tim_a_exact\tn_exact\n";
  double n_err = 0.0, a_err = 0.0;
  for (const auto& r : tr.records) {
    const Complex a_ex = mean_a(r.t, a0, cfg.params, cfg.drive);
    const double n_ex = mean_n(r.t, n0, a0, cfg.params, cfg.drive);
    n_err = std::max(n_err, std::abs(r.n - n_ex));
    a_err = std::max(a_err, std::abs(r.a - a_ex));
    const std::string S = g0 ? num(entropy(solve_u(r.t, g0->u(), cfg.params))) : "nan";
    f << num(r.t) << '\t' << num(r.a.real()) << '\t' << num(r.a.imag()) << '\t' << num(r.n)
      << '\t' << num(r.x) << '\t' << num(r.p) << '\t' << S << '\t' << num(r.entropy) << '\t'
      << num(r.purity) << '\t' << num(r.trace_err) << '\t' << num(r.min_eig) << '\t'
      << num(r.leak) << '\t' << num(a_ex.real()) << '\t' << num(a_ex.imag()) << '\t'
      << num(n_ex) << '\n';
  }
  constexpr double tol = 1e-6;
  const bool ok = n_err <= tol && a_err <= tol;
  f << "# check max_abs_n_error = " << num(n_err) << " tolerance = " << num(tol) << " "
    << (n_err <= tol ? "ok" : "MISMATCH") << "\n";
  f << "# check max_abs_a_error = " << num(a_err) << " tolerance = " << num(tol) << " "
    << (a_err <= tol ? "ok" : "MISMATCH") << "\n";
  if (!ok) warn(ctx, "integrator and closed-form mean values differ by more than 1e-6");
  info(ctx, "evolve: " + std::to_string(tr.records.size()) + " rows, " +
                std::to_string(tr.steps_taken) + " steps -> " +
                (ctx.out_dir / "trajectory.tsv").string());
  return exit_ok;
}

int cmd_husimi(const RunConfig& cfg, const CommandContext& ctx) {
  validate_config(cfg, false);
  const auto& hs = cfg.husimi;
  const double T = cycle_period(cfg);
  std::vector<double> times = hs.times;
  if (times.empty())
    for (int k = 0; k < hs.count; ++k) times.push_back(k * T / hs.count);

  std::optional<GaussianState> g0;
  if (hs.state == HusimiSpec::State::flow) {
    g0 = cfg.initial.gaussian();
    if (!g0) throw ConfigError("husimi.state = flow needs a Gaussian initial state");
  }
  auto state_at = [&](double t) {
    return g0 ? gaussian_flow(*g0, t, cfg.params, cfg.drive)
              : limit_cycle_state(t, cfg.params, cfg.drive);
  };
  std::vector<GaussianState> states;
  for (double t : times) states.push_back(state_at(t));

  PhaseWindow window;
  if (hs.window) {
    window = *hs.window;
    window.nx = hs.nx;
    window.np = hs.np;
  } else if (!g0) {
    window = limit_cycle_window(cfg.params, cfg.drive, hs.nx, hs.np);
  } else {
    std::vector<Complex> centres;
    double b = 1.0;
    for (const auto& g : states) {
      centres.push_back(g.alpha());
      b = std::min(b, g.b());
    }
    window = window_around(centres, b, cfg.params.omega, hs.nx, hs.np, 7.0);
  }

  std::vector<HusimiGrid> grids(times.size());
  parallel_for(times.size(), [&](std::size_t i) {
    grids[i] = husimi_grid(states[i], window, cfg.params.omega, times[i]);
  });

  const double w = cfg.params.omega;
  for (std::size_t i = 0; i < grids.size(); ++i) {
    const auto& g = grids[i];
    const double xc = x_of(states[i].alpha(), w), pc = p_of(states[i].alpha(), w);
    if (!g.contains(xc, pc)) {
      warn(ctx, "centre (" + num(xc) + ", " + num(pc) + ") at t = " + num(times[i]) +
                    " lies outside the window");
    }
    auto f = open_output(ctx, "husimi_" + fixed_index(i) + ".tsv");
    write_header(f, cfg, "husimi",
                 {"x_range = " + num(window.x_min) + " " + num(window.x_max),
                  "p_range = " + num(window.p_min) + " " + num(window.p_max),
                  "nx = " + std::to_string(window.nx), "np = " + std::to_string(window.np),
                  "time = " + num(times[i]), "centre = " + num(xc) + " " + num(pc),
                  "peak = " + num(states[i].b())});
    for (int j = 0; j < window.np; ++j) {
      for (int k = 0; k < window.nx; ++k) f << (k ? "\t" : "") << num(g.at(k, j));
      f << '\n';
    }
  }

  // Path of the mean position over one cycle (the ellipse for a cosine drive).
  auto f = open_output(ctx, "ellipse.tsv");
  write_header(f, cfg, "husimi", {"samples = " + std::to_string(hs.path_samples)});
  f << "t\tx\tp\n";
  for (int k = 0; k < hs.path_samples; ++k) {
    const double t = T * k / hs.path_samples;
    const Complex a = forced_response_limit(t, w, cfg.params.gamma(), cfg.drive);
    f << num(t) << '\t' << num(x_of(a, w)) << '\t' << num(p_of(a, w)) << '\n';
  }
  info(ctx, "husimi: " + std::to_string(grids.size()) + " grids -> " + ctx.out_dir.string());
  return exit_ok;
}

int cmd_scan(const RunConfig& cfg, const CommandContext& ctx) {
  validate_config(cfg, false);
  const auto& sc = cfg.scan;
  if (sc.samples < 3) throw ConfigError("scan.samples must be >= 3");
  if (!(sc.Omega_min > 0.0 && sc.Omega_max > sc.Omega_min))
    throw ConfigError("scan: need 0 < Omega_min < Omega_max");
  if (cfg.drive.kind() == Drive::Kind::fourier)
    throw ConfigError("scan: needs drive.kind = cosine or none");
  const double f0 = cfg.drive.f0();
  const auto scan = resonance_scan(cfg.params, f0, sc.Omega_min, sc.Omega_max, sc.samples);

  auto f = open_output(ctx, "scan.tsv");
  write_header(f, cfg, "scan");
  f << "Omega\tA_q\tphi_q\tnbar\n";
  for (const auto& pt : scan.points)
    f << num(pt.Omega) << '\t' << num(pt.A_q) << '\t' << num(pt.phi_q) << '\t' << num(pt.nbar)
      << '\n';
  const double step = (sc.Omega_max - sc.Omega_min) / (sc.samples - 1);
  const double at_max = scan.points[scan.argmax].Omega;
  f << "# argmax_Omega = " << num(at_max) << "\n";
  f << "# refined_Omega = " << num(scan.Omega_peak) << "\n";
  f << "# refined_A_q = " << num(scan.A_peak) << "\n";
  if (cfg.params.gamma() < cfg.params.omega) {
    const double W_R = resonance_frequency(cfg.params);
    const double dev = std::abs(at_max - W_R);
    f << "# resonance_Omega = " << num(W_R) << "\n";
    f << "# check argmax_deviation = " << num(dev) << " grid_step = " << num(step) << " "
      << (dev <= step ? "ok" : "outside range or off-grid") << "\n";
  } else {
    f << "# resonance_Omega = none (gamma >= omega)\n";
  }
  info(ctx, "scan: peak near Omega = " + num(scan.Omega_peak) + " -> " +
                (ctx.out_dir / "scan.tsv").string());
  return exit_ok;
}

int cmd_validate(const RunConfig& cfg, const CommandContext& ctx) {
  validate_config(cfg, true);
  std::vector<Check> extra;
  // Closed-form consistency for the configured model itself.
  if (cfg.drive.kind() == Drive::Kind::cosine && cfg.drive.Omega() > 0.0) {
    const auto lc = quantum_lc(cfg.params, cfg.drive);
    double ellipse = 0.0;
    const double T = cycle_period(cfg);
    for (int k = 0; k < 16; ++k)
      ellipse = std::max(ellipse, lc.ellipse_residual(T * k / 16, cfg.params, cfg.drive));
    extra.push_back(at_most("config.ellipse_residual", ellipse,
                            1e-9 * std::max(1.0, lc.A_q * lc.A_q)));
    const double nbar = limit_cycle_nbar(cfg.params, cfg.drive);
    extra.push_back(within("config.nbar_routes",
                           limit_cycle_nbar_from_amplitude(cfg.params, cfg.drive, 256), nbar,
                           1e-10 * std::max(1.0, nbar)));
  }

  const auto suite = run_suite(SuiteOptions{cfg.seed});
  auto f = open_output(ctx, "validate.tsv");
  write_header(f, cfg, "validate");
  f << "key\texpected\tactual\ttolerance\tpass\n";
  std::vector<std::string> failing;
  auto row = [&](const Check& c) {
    f << c.key << '\t' << num(c.expected) << '\t' << num(c.actual) << '\t' << num(c.tolerance)
      << '\t' << (c.pass ? "pass" : "fail") << '\n';
    if (!c.pass) failing.push_back(c.key);
  };
  for (const auto& c : suite)
    for (const auto& chk : c.checks) row(chk);
  for (const auto& chk : extra) row(chk);

  // Wall time varies between runs; it goes to the console only.
  for (const auto& c : suite) {
    if (!c.within_budget()) failing.push_back("c" + std::to_string(c.id) + ".runtime");
    std::ostringstream os;
    os << "[" << (c.pass() ? "PASS" : "FAIL") << "] " << c.id << " " << c.title << " ("
       << std::fixed << std::setprecision(2) << c.seconds << " s of " << c.budget_seconds
       << " s)";
    info(ctx, os.str());
  }
  if (!failing.empty()) {
    for (const auto& k : failing) err_of(ctx) << "failed: " << k << "\n";
    return exit_check_failed;
  }
  info(ctx, "validate: all checks pass -> " + (ctx.out_dir / "validate.tsv").string());
  return exit_ok;
}

int cmd_steady_state(const RunConfig& cfg, const CommandContext& ctx) {
  validate_config(cfg, false);
  const FockDim dim(cfg.grid.dim);
  const double u = cfg.params.nu / cfg.params.mu;
  if (u > 0.0) {
    // Geometric tail u^dim must be negligible.
    const double tail = std::pow(u, static_cast<double>(dim.size()));
    if (tail > 1e-8) {
      const auto need = static_cast<std::size_t>(std::ceil(std::log(1e-8) / std::log(u)));
      std::ostringstream os;
      os << "steady state loses " << tail << " of its weight above the truncation; requires dim >= "
         << need << ", have " << dim.size();
      throw TruncationOverflow(os.str(), need);
    }
  }
  const auto ss = steady_state(cfg.params, dim);
  auto f = open_output(ctx, "steady_state.tsv");
  write_header(f, cfg, "steady-state",
               {"u = " + num(u), "entropy = " + num(entropy_infinity(cfg.params))});
  f << "n\tp_n\n";
  for (Eigen::Index k = 0; k < dim.index(); ++k)
    f << k << '\t' << num(ss.matrix()(k, k).real()) << '\n';
  const double n_mean = expectation(ladder_ops(dim).n, ss).real();
  f << "# mean_n = " << num(n_mean) << " expected = "
    << num(cfg.params.nu / (2.0 * cfg.params.gamma())) << "\n";
  info(ctx, "steady-state: <n> = " + num(n_mean) + " -> " +
                (ctx.out_dir / "steady_state.tsv").string());
  return exit_ok;
}

int run_command(const std::string& name, const RunConfig& cfg, const CommandContext& ctx) {
  try {
    std::filesystem::create_directories(ctx.out_dir);
    if (name == "evolve") return cmd_evolve(cfg, ctx);
    if (name == "husimi") return cmd_husimi(cfg, ctx);
    if (name == "scan") return cmd_scan(cfg, ctx);
    if (name == "validate") return cmd_validate(cfg, ctx);
    if (name == "steady-state") return cmd_steady_state(cfg, ctx);
    err_of(ctx) << "error: unknown command '" << name << "'\n";
    return exit_config;
  } catch (const IntegrationDiverged& e) {
    err_of(ctx) << "error: " << e.what() << "\n";
    return exit_diverged;
  } catch (const ConfigError& e) {
    err_of(ctx) << "config error";
    if (e.line() > 0) err_of(ctx) << " (" << cfg.source << ":" << e.line() << ")";
    err_of(ctx) << ": " << e.what() << "\n";
    return exit_config;
  } catch (const std::exception& e) {
    err_of(ctx) << "error: " << e.what() << "\n";
    return exit_config;
  }
}

}  // namespace lindosc::app
