#include "lindosc/app/validation.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "lindosc/app/commands.hpp"
#include "lindosc/app/parallel.hpp"
#include "lindosc/freeform.hpp"
#include "lindosc/gaussian.hpp"
#include "lindosc/lindblad.hpp"
#include "lindosc/nonhermitian.hpp"
#include "lindosc/observables.hpp"

namespace lindosc::app {

Check within(std::string key, double expected, double actual, double tol) {
  const bool ok = std::isfinite(actual) && std::abs(actual - expected) <= tol;
  return {std::move(key), expected, actual, tol, ok};
}

Check at_most(std::string key, double actual, double bound) {
  return {std::move(key), 0.0, actual, bound, std::isfinite(actual) && actual <= bound};
}

Check at_least(std::string key, double actual, double bound) {
  return {std::move(key), bound, actual, 0.0, std::isfinite(actual) && actual >= bound};
}

bool Criterion::numerics_pass() const {
  return !checks.empty() &&
         std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

// The reference configuration shared by several criteria.
const LindbladParams fig_params{1.1, 0.6, 0.4};
Drive fig_drive() { return Drive::cosine(1.4, 1.095445); }

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (n - 1);
  return v;
}

// Scalar RK4 on the Riccati equation u' = nu - (mu + nu) u + mu u^2, stepping
// through the sorted `times` with steps no longer than h.
std::vector<double> riccati_rk4(const std::vector<double>& times, double u0,
                                const LindbladParams& p, double h) {
  auto f = [&](double u) { return p.nu - (p.mu + p.nu) * u + p.mu * u * u; };
  std::vector<double> out;
  double t = 0.0, u = u0;
  for (double target : times) {
    const double span = target - t;
    const long n = std::max(1L, static_cast<long>(std::ceil(span / h - 1e-9)));
    const double dt = span / static_cast<double>(n);
    for (long s = 0; s < n && span > 0.0; ++s) {
      const double k1 = f(u), k2 = f(u + 0.5 * dt * k1), k3 = f(u + 0.5 * dt * k2),
                   k4 = f(u + dt * k3);
      u += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    t = target;
    out.push_back(u);
  }
  return out;
}

// -sum p_n ln p_n for p_n = (1 - u) u^n, summed directly.
double geometric_entropy(double u) {
  double s = 0.0, p = 1.0 - u;
  for (int n = 0; n < 100000 && p > 1e-300; ++n, p *= u) s -= p * std::log(p);
  return s;
}

// Full-rank density on the lowest `support` levels: G G^dagger / tr with
// complex normal entries.
DensityMatrix random_low_support(std::mt19937_64& rng, FockDim dim, int support) {
  std::normal_distribution<double> normal;
  ComplexMatrix g = ComplexMatrix::Zero(dim.index(), support);
  for (int i = 0; i < support; ++i)
    for (int j = 0; j < support; ++j) g(i, j) = Complex(normal(rng), normal(rng));
  return DensityMatrix::normalized(g * g.adjoint());
}

Criterion c1_vacuum_relaxation() {
  Criterion c{1, "vacuum relaxation <n>(t) = (nu/2g)(1 - e^{-2gt})", {}};
  const LindbladParams p{1.0, 0.6, 0.4};
  const FockDim dim(64);
  std::vector<double> grid;
  for (int i = 0; i <= 60; ++i) grid.push_back(0.5 * i);
  const auto tr = evolve(DensityMatrix::fock(0, dim), grid, p, Drive::none());
  const double target = p.nu / (2.0 * p.gamma());
  double err = 0.0, trace_err = 0.0, herm_err = 0.0;
  for (const auto& r : tr.records) {
    err = std::max(err, std::abs(r.n - target * (1.0 - std::exp(-2.0 * p.gamma() * r.t))));
    trace_err = std::max(trace_err, r.trace_err);
    herm_err = std::max(herm_err, r.herm_err);
  }
  c.checks.push_back(at_most("c1.max_abs_n_error", err, 1e-6));
  c.checks.push_back(at_most("c1.max_trace_error", trace_err, 1e-8));
  c.checks.push_back(at_most("c1.max_hermiticity_error", herm_err, 1e-8));
  const auto ss = steady_state(p, dim);
  c.checks.push_back(within("c1.steady_state_n", target,
                            expectation(ladder_ops(dim).n, ss).real(), 1e-6));
  c.budget_seconds = 30.0;
  return c;
}

Criterion c2_freeform_vs_engine(const SuiteOptions& opts) {
  Criterion c{2, "force-free closed-form sum matches the integrator", {}};
  const LindbladParams p{1.0, 0.6, 0.4};
  const FockDim dim(32);
  const std::vector<double> times{0.5, 1.0, 2.0, 5.0};
  constexpr int states = 20;
  std::mt19937_64 rng(opts.seed + 2);
  std::vector<DensityMatrix> inputs;
  for (int s = 0; s < states; ++s) inputs.push_back(random_low_support(rng, dim, 4));

  std::vector<double> worst(states, 0.0);
  parallel_for(states, [&](std::size_t s) {
    IntegratorOptions o;
    o.snapshot_times = times;
    const auto tr = evolve(inputs[s], times, p, Drive::none(), o);
    for (double t : times)
      worst[s] = std::max(worst[s], trace_distance(fujii_density(inputs[s], t, p),
                                                   *tr.snapshot_at(t)));
  });
  c.checks.push_back(
      at_most("c2.max_trace_distance", *std::max_element(worst.begin(), worst.end()), 1e-6));
  c.budget_seconds = 120.0;
  return c;
}

Criterion c3_riccati() {
  Criterion c{3, "ground-state Riccati solution equals G(t)", {}};
  double route_err = 0.0, ode_err = 0.0, mono_violation = 0.0;
  for (const LindbladParams& p : {LindbladParams{1.0, 0.6, 0.4}, LindbladParams{1.1, 0.3, 0.05},
                                  LindbladParams{2.0, 1.5, 1.2}}) {
    const auto times = linspace(0.0, 50.0, 1000);
    const auto ode = riccati_rk4(times, 0.0, p, 1e-3);
    double prev = -1.0;
    for (std::size_t i = 0; i < times.size(); ++i) {
      const double u = solve_u(times[i], 0.0, p);
      const double G = efg(times[i], p).G;
      route_err = std::max(route_err, std::abs(u - G));
      ode_err = std::max({ode_err, std::abs(u - ode[i]), std::abs(G - ode[i])});
      mono_violation = std::max(mono_violation, prev - G);
      prev = G;
    }
  }
  c.checks.push_back(at_most("c3.max_abs_u_minus_G", route_err, 1e-12));
  c.checks.push_back(at_most("c3.max_abs_vs_rk4", ode_err, 1e-8));
  c.checks.push_back(at_most("c3.G_monotonicity_violation", mono_violation, 1e-15));
  c.budget_seconds = 1.0;
  return c;
}

Criterion c4_form_invariance(const SuiteOptions& opts) {
  Criterion c{4, "Gaussian flow solves the Lindblad equation", {}};
  const LindbladParams p = fig_params;
  const Drive d = fig_drive();
  const FockDim dim(48);
  constexpr int samples = 10;
  constexpr double delta = 1e-3;
  std::mt19937_64 rng(opts.seed + 4);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  struct Sample {
    GaussianState g;
    double t;
  };
  std::vector<Sample> inputs;
  for (int s = 0; s < samples; ++s) {
    const double u0 = 0.5 * unit(rng);
    const double r = std::sqrt(unit(rng));
    const double th = two_pi * unit(rng);
    const double t = 0.1 + 1.9 * unit(rng);
    inputs.push_back({GaussianState::from_u_alpha(u0, std::polar(r, th)), t});
  }
  std::vector<double> resid(samples, 0.0), trace_err(samples, 0.0);
  parallel_for(samples, [&](std::size_t s) {
    const GaussianState& g = inputs[s].g;
    const double t = inputs[s].t;
    auto rho = [&](double tt) { return materialize(gaussian_flow(g, tt, p, d), dim).matrix(); };
    const ComplexMatrix fd =
        (-rho(t + 2 * delta) + 8.0 * rho(t + delta) - 8.0 * rho(t - delta) + rho(t - 2 * delta)) /
        (12.0 * delta);
    const ComplexMatrix r = rho(t);
    resid[s] = max_abs_diff(fd, lindblad_rhs(r, t, p, d));
    trace_err[s] = std::abs(r.trace() - 1.0);
  });
  c.checks.push_back(
      at_most("c4.max_abs_residual", *std::max_element(resid.begin(), resid.end()), 1e-6));
  c.checks.push_back(at_most("c4.max_trace_error",
                             *std::max_element(trace_err.begin(), trace_err.end()), 1e-12));
  c.budget_seconds = 60.0;
  return c;
}

Criterion c5_limit_cycle_husimi() {
  Criterion c{5, "limit-cycle Husimi peaks ride the ellipse", {}};
  const LindbladParams p = fig_params;
  const Drive d = fig_drive();
  const auto lc = quantum_lc(p, d);
  const double T = two_pi / d.Omega();
  const double b = 1.0 - p.nu / p.mu;
  const PhaseWindow window = limit_cycle_window(p, d, 161, 161);

  double height_err = 0.0, ellipse_err = 0.0, bound_excess = -1.0, norm_err = 0.0;
  double analytic_ellipse = 0.0;
  bool centred = true;
  for (int k = 0; k < 6; ++k) {
    const double t = k * T / 6.0;
    const auto g = limit_cycle_state(t, p, d);
    const auto grid = husimi_grid(g, window, p.omega, t);
    const auto peak = grid.fit_peak();
    height_err = std::max(height_err, std::abs(peak.value - b));
    const double e = std::pow(peak.p - p.gamma() * peak.x, 2) / (d.Omega() * d.Omega()) +
                     peak.x * peak.x - lc.A_q * lc.A_q;
    ellipse_err = std::max(ellipse_err, std::abs(e));
    bound_excess = std::max(bound_excess, grid.peak() - b);
    norm_err = std::max(norm_err, std::abs(grid.normalization() - 1.0));
    analytic_ellipse = std::max(analytic_ellipse, lc.ellipse_residual(t, p, d));
    centred = centred && grid.contains(x_of(g.alpha(), p.omega), p_of(g.alpha(), p.omega));
  }
  c.checks.push_back(at_most("c5.max_peak_height_error", height_err, 1e-9));
  c.checks.push_back(at_most("c5.fitted_centre_ellipse_residual", ellipse_err, 1e-9));
  c.checks.push_back(at_most("c5.mean_amplitude_ellipse_residual", analytic_ellipse, 1e-9));
  c.checks.push_back(at_most("c5.grid_max_minus_b", bound_excess, 1e-12));
  c.checks.push_back(at_most("c5.normalization_error", norm_err, 1e-6));
  c.checks.push_back(at_least("c5.centres_inside_window", centred ? 1.0 : 0.0, 1.0));

  const auto g0 = limit_cycle_state(0.0, p, d);
  const auto g1 = gaussian_flow(g0, T, p, d);
  c.checks.push_back(at_most("c5.period_return_alpha", std::abs(g1.alpha() - g0.alpha()), 1e-9));
  c.checks.push_back(at_most("c5.period_return_u", std::abs(g1.u() - g0.u()), 1e-9));
  c.budget_seconds = 10.0;
  return c;
}

Criterion c6_limit_cycle_nbar(const SuiteOptions& opts) {
  Criterion c{6, "limit-cycle n-bar closed form", {}};
  const LindbladParams p = fig_params;
  const Drive d = fig_drive();
  c.checks.push_back(within("c6.reference_nbar_routes", limit_cycle_nbar_from_amplitude(p, d),
                            limit_cycle_nbar(p, d), 1e-10));
  c.checks.push_back(within("c6.reference_nbar_value", 50.999994897962594,
                            limit_cycle_nbar(p, d), 1e-9));
  std::mt19937_64 rng(opts.seed + 6);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double worst = 0.0;
  for (int s = 0; s < 50; ++s) {
    const double omega = 0.5 + 1.5 * unit(rng);
    const double gamma = 0.05 + (0.5 * omega - 0.05) * unit(rng);
    const double nu = 0.5 * unit(rng);
    const LindbladParams q{omega, nu + 2.0 * gamma, nu};
    const Drive dq = Drive::cosine(0.1 + 1.4 * unit(rng), 0.1 + 2.4 * unit(rng));
    worst = std::max(worst, std::abs(limit_cycle_nbar(q, dq) -
                                     limit_cycle_nbar_from_amplitude(q, dq, 256)));
  }
  c.checks.push_back(at_most("c6.random_max_abs_diff", worst, 1e-10));
  c.budget_seconds = 5.0;
  return c;
}

Criterion c7_entropy() {
  Criterion c{7, "entropy limit and drive independence", {}};
  const LindbladParams p = fig_params;
  c.checks.push_back(
      within("c7.entropy_infinity_vs_sum", geometric_entropy(p.nu / p.mu), entropy_infinity(p),
             1e-10));
  c.checks.push_back(within("c7.entropy_infinity_value", 1.9095425048844383,
                            entropy_infinity(p), 1e-12));

  // Starting purer than the fixed point the entropy rises, from a hotter
  // state it falls; both approach the limit.
  const auto times = linspace(0.0, 200.0, 2001);
  double rise_violation = 0.0, fall_violation = 0.0;
  double prev_rise = -1.0, prev_fall = 1e300;
  for (double t : times) {
    const double s_rise = entropy(solve_u(t, 0.1, p));
    const double s_fall = entropy(solve_u(t, 0.9, p));
    rise_violation = std::max(rise_violation, prev_rise - s_rise);
    fall_violation = std::max(fall_violation, s_fall - prev_fall);
    prev_rise = s_rise;
    prev_fall = s_fall;
  }
  c.checks.push_back(at_most("c7.rise_monotonicity_violation", rise_violation, 1e-14));
  c.checks.push_back(at_most("c7.fall_monotonicity_violation", fall_violation, 1e-14));
  c.checks.push_back(within("c7.late_entropy_from_below", entropy_infinity(p), prev_rise, 1e-9));
  c.checks.push_back(within("c7.late_entropy_from_above", entropy_infinity(p), prev_fall, 1e-9));

  double drive_diff = 0.0;
  const auto g0 = GaussianState::from_u_alpha(0.25, {0.7, -0.3});
  for (double t : linspace(0.0, 30.0, 301)) {
    const auto free = gaussian_flow(g0, t, p, Drive::none());
    const auto driven = gaussian_flow(g0, t, p, fig_drive());
    drive_diff = std::max(drive_diff, std::abs(entropy(free.u()) - entropy(driven.u())));
  }
  c.checks.push_back(at_most("c7.drive_independence", drive_diff, 0.0));
  c.budget_seconds = 1.0;
  return c;
}

Criterion c8_resonance() {
  Criterion c{8, "resonance of the quantum limit cycle", {}};
  const LindbladParams p = fig_params;
  const double f0 = 1.4;
  const auto scan = resonance_scan(p, f0, 0.5, 1.7, 400);
  const double step = (1.7 - 0.5) / 399.0;
  const double Omega_R = resonance_frequency(p);
  c.checks.push_back(within("c8.grid_argmax_Omega", Omega_R, scan.points[scan.argmax].Omega,
                            step));
  c.checks.push_back(within("c8.refined_peak_Omega", Omega_R, scan.Omega_peak, 1e-6));
  const double f0_tilde = std::sqrt(2.0 * p.omega) * f0;
  const double A_R = quantum_lc(p, Drive::cosine(f0, Omega_R)).A_q;
  c.checks.push_back(within("c8.peak_amplitude_closed_form",
                            f0_tilde / (2.0 * p.gamma() * p.omega), A_R, 1e-10));
  c.checks.push_back(within("c8.peak_amplitude_value", 9.43879807448539, A_R, 1e-10));
  // The classical oscillator with w0 = sqrt(w^2 + g^2) peaks at the same place.
  const auto cl = classical_lc(omega0_from_quantum(p.omega, p.gamma()), p.gamma(),
                               ClassicalDrive{f0_tilde, Omega_R});
  c.checks.push_back(within("c8.classical_peak_Omega", Omega_R, cl.Omega_R, 1e-12));
  c.budget_seconds = 5.0;
  return c;
}

// Five-point derivative of a complex function of time.
template <class F>
Complex derivative(F&& f, double t, double h) {
  return (-f(t + 2 * h) + 8.0 * f(t + h) - 8.0 * f(t - h) + f(t - 2 * h)) / (12.0 * h);
}

Criterion c9_nonhermitian() {
  Criterion c{9, "complex-frequency coherent evolution", {}};
  const NHParams driven{1.1, 0.1, 0.3, 1.095445};
  const NHParams undriven{1.1, 0.1, 0.0, 0.0};
  const FockDim dim(64);
  const auto times = linspace(0.0, 20.0, 41);

  double a_err = 0.0, n_err = 0.0, engine_a = 0.0, engine_n = 0.0, norm_err = 0.0;
  for (const auto& [nh, a0] : {std::pair{driven, Complex(1.0, 0.0)},
                               std::pair{undriven, Complex(1.0, 0.5)}}) {
    const auto lp = nh.lindblad();
    const auto dr = nh.drive();
    const double n0 = std::norm(a0);
    for (double t : times) {
      const auto e = nh_expectations(t, a0, nh);
      a_err = std::max(a_err, std::abs(e.a - mean_a(t, a0, lp, dr)));
      n_err = std::max(n_err, std::abs(e.n - mean_n(t, n0, a0, lp, dr)));
      if (nh.f0 == 0.0) {
        const auto norm = nh_norm(t, a0, nh, dim);
        norm_err = std::max(norm_err, std::abs(norm.prefactor - *norm.series) / norm.prefactor);
      }
    }
    IntegratorOptions o;
    o.dt = 0.005;
    const auto tr = evolve(DensityMatrix::pure(coherent_state(a0, dim)), times, lp, dr, o);
    for (const auto& r : tr.records) {
      const auto e = nh_expectations(r.t, a0, nh);
      engine_a = std::max(engine_a, std::abs(r.a - e.a));
      engine_n = std::max(engine_n, std::abs(r.n - e.n));
    }
  }
  c.checks.push_back(at_most("c9.alpha_vs_mean_a", a_err, 1e-10));
  c.checks.push_back(at_most("c9.n_vs_mean_n", n_err, 1e-10));
  c.checks.push_back(at_most("c9.alpha_vs_integrator", engine_a, 1e-7));
  c.checks.push_back(at_most("c9.n_vs_integrator", engine_n, 1e-7));
  c.checks.push_back(at_most("c9.norm_prefactor_vs_series", norm_err, 1e-12));

  // The coefficient equations themselves, away from t = 0.
  double ode_resid = 0.0;
  for (const NHParams& nh : {driven, NHParams{1.0, 0.13, 0.7, 0.83}, NHParams{1.1, 0.1, 1.4, 0.5}}) {
    const Complex wt = nh.omega_tilde();
    const Complex I(0.0, 1.0);
    for (double t : linspace(0.05, 20.0, 400)) {
      const auto k = abc(t, nh);
      const double f = nh.f0 * std::cos(nh.Omega * t);
      const Complex dA = derivative([&](double s) { return abc(s, nh).A; }, t, 1e-3);
      const Complex dB = derivative([&](double s) { return abc(s, nh).B; }, t, 1e-3);
      const Complex dC = derivative([&](double s) { return abc(s, nh).C; }, t, 1e-3);
      ode_resid = std::max({ode_resid, std::abs(I * dB + f * std::exp(-I * wt * t)),
                            std::abs(I * dC - wt * k.C + f), std::abs(I * dA + f * k.C)});
    }
  }
  c.checks.push_back(at_most("c9.abc_ode_residual", ode_resid, 1e-7));
  const auto ref = abc(1.7, NHParams{1.0, 0.13, 0.7, 0.83});
  c.checks.push_back(within("c9.A_re", -0.27035833281209654, ref.A.real(), 1e-12));
  c.checks.push_back(within("c9.A_im", 0.14055965693805855, ref.A.imag(), 1e-12));
  c.checks.push_back(within("c9.B_re", 0.41625794489702883, ref.B.real(), 1e-12));
  c.checks.push_back(within("c9.B_im", 0.555862250709126, ref.B.imag(), 1e-12));
  c.checks.push_back(within("c9.C_re", 0.5577180879010565, ref.C.real(), 1e-12));
  c.checks.push_back(within("c9.C_im", 0.35368150309815194, ref.C.imag(), 1e-12));
  c.budget_seconds = 60.0;
  return c;
}

Criterion c10_convergence() {
  Criterion c{10, "fourth-order convergence of the integrator", {}};
  const LindbladParams p{1.0, 0.6, 0.4};
  const FockDim dim(64);
  std::vector<double> grid;
  for (int i = 1; i <= 30; ++i) grid.push_back(i);
  const std::vector<double> steps{0.02, 0.01, 0.005};
  std::vector<double> err(steps.size(), 0.0);
  parallel_for(steps.size(), [&](std::size_t k) {
    IntegratorOptions o;
    o.dt = steps[k];
    o.renorm_every = 0;
    o.snapshot_times = grid;
    const auto tr = evolve(DensityMatrix::fock(0, dim), grid, p, Drive::none(), o);
    for (double t : grid)
      err[k] = std::max(err[k], trace_distance(*tr.snapshot_at(t), thermal_from_ground(t, p, dim)));
  });
  c.checks.push_back(at_most("c10.error_h0.02", err[0], 1e-6));
  c.checks.push_back(at_least("c10.order_h0.02_h0.01", std::log2(err[0] / err[1]), 3.5));
  c.checks.push_back(at_least("c10.order_h0.02_h0.005", std::log(err[0] / err[2]) / std::log(4.0),
                              3.7));
  c.budget_seconds = 60.0;
  return c;
}

}  // namespace

Criterion run_criterion(int id, const SuiteOptions& opts) {
  const auto start = std::chrono::steady_clock::now();
  Criterion c;
  switch (id) {
    case 1: c = c1_vacuum_relaxation(); break;
    case 2: c = c2_freeform_vs_engine(opts); break;
    case 3: c = c3_riccati(); break;
    case 4: c = c4_form_invariance(opts); break;
    case 5: c = c5_limit_cycle_husimi(); break;
    case 6: c = c6_limit_cycle_nbar(opts); break;
    case 7: c = c7_entropy(); break;
    case 8: c = c8_resonance(); break;
    case 9: c = c9_nonhermitian(); break;
    case 10: c = c10_convergence(); break;
    default: throw std::out_of_range("no criterion " + std::to_string(id));
  }
  c.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return c;
}

std::vector<Criterion> run_suite(const SuiteOptions& opts) {
  std::vector<Criterion> all;
  for (int id = 1; id <= criterion_count; ++id) all.push_back(run_criterion(id, opts));
  return all;
}

}  // namespace lindosc::app
