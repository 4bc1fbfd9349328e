#include "lindosc/observables.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "lindosc/errors.hpp"

namespace lindosc {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

// -atan2 keeps the phase continuous through resonance and inside (-pi, 0].
double lag_phase(double stiffness, double gamma, double Omega) {
  const double phi = -std::atan2(2.0 * gamma * Omega, stiffness);
  return phi == 0.0 ? 0.0 : phi;
}

double lc_amplitude(double f0_tilde, double stiffness, double gamma, double Omega) {
  return f0_tilde / std::hypot(stiffness, 2.0 * gamma * Omega);
}

void require_cosine(const Drive& drive, const char* what) {
  if (drive.kind() == Drive::Kind::fourier) {
    throw InvalidParameters(std::string(what) + " requires a cosine drive");
  }
}

}  // namespace

ClassicalLC classical_lc(double omega0, double gamma, const ClassicalDrive& drive) {
  if (!(omega0 > 0.0) || !(gamma >= 0.0) || !(drive.Omega >= 0.0)) {
    throw InvalidParameters("classical oscillator needs omega0 > 0, gamma >= 0, Omega >= 0");
  }
  ClassicalLC lc;
  lc.omega0 = omega0;
  lc.gamma = gamma;
  lc.Omega = drive.Omega;
  const double k = omega0 * omega0 - drive.Omega * drive.Omega;
  lc.A = lc_amplitude(drive.f0_tilde, k, gamma, drive.Omega);
  lc.phi = lag_phase(k, gamma, drive.Omega);
  const double r2 = omega0 * omega0 - 2.0 * gamma * gamma;
  if (r2 > 0.0) {
    lc.Omega_R = std::sqrt(r2);
    lc.A_R = gamma > 0.0 ? drive.f0_tilde / (2.0 * gamma * std::sqrt(omega0 * omega0 - gamma * gamma))
                         : std::numeric_limits<double>::infinity();
  } else {
    lc.Omega_R = 0.0;
    lc.A_R = drive.f0_tilde / (omega0 * omega0);
  }
  return lc;
}

PhasePoint classical_solution(double x0, double v0, double t, double omega0, double gamma,
                              const ClassicalDrive& drive) {
  const ClassicalLC lc = classical_lc(omega0, gamma, drive);
  const double W = drive.Omega;
  const double y0 = x0 - lc.A * std::cos(lc.phi);
  const double y1 = v0 + lc.A * W * std::sin(lc.phi);

  // y = e^{-g t} (y0 c + (y1 + g y0) s), c' = -disc s, s' = c, with
  // c = cos(w t), s = sin(w t)/w and w^2 = disc; disc < 0 gives cosh/sinh.
  const double disc = omega0 * omega0 - gamma * gamma;
  double c = 0.0;
  double s = 0.0;
  const double z = disc * t * t;
  if (std::abs(z) < 1e-6) {
    c = 1.0 - z / 2.0 + z * z / 24.0;
    s = t * (1.0 - z / 6.0 + z * z / 120.0);
  } else if (disc > 0.0) {
    const double w = std::sqrt(disc);
    c = std::cos(w * t);
    s = std::sin(w * t) / w;
  } else {
    const double kap = std::sqrt(-disc);
    c = std::cosh(kap * t);
    s = std::sinh(kap * t) / kap;
  }
  const double damp = std::exp(-gamma * t);
  const double q = y1 + gamma * y0;
  const double y = damp * (y0 * c + q * s);
  const double dy = -gamma * y + damp * (-disc * y0 * s + q * c);

  const double ph = W * t + lc.phi;
  return {y + lc.A * std::cos(ph), dy - lc.A * W * std::sin(ph)};
}

double omega0_from_quantum(double omega, double gamma) { return std::hypot(omega, gamma); }

Complex mean_a(double t, Complex a0, const LindbladParams& params, const Drive& drive) {
  params.validate();
  if (!(t >= 0.0) || !std::isfinite(t)) {
    throw InvalidParameters("mean_a: t must be finite and >= 0");
  }
  const double g = params.gamma();
  return a0 * std::exp(Complex(-g * t, -params.omega * t)) +
         forced_response(t, params.omega, g, drive);
}

double QuantumLC::x(double t) const { return A_q * std::cos(Omega * t + phi_q); }

double QuantumLC::p(double t) const {
  const double ph = Omega * t + phi_q;
  return -Omega * A_q * std::sin(ph) + gamma * A_q * std::cos(ph);
}

double QuantumLC::ellipse_residual(double t, const LindbladParams& params,
                                   const Drive& drive) const {
  const Complex a = forced_response_limit(t, params.omega, params.gamma(), drive);
  const double xs = std::sqrt(2.0 / params.omega) * a.real();
  const double ps = std::sqrt(2.0 * params.omega) * a.imag();
  if (Omega == 0.0) return std::abs(xs - x(t)) + std::abs(ps - p(t));
  const double q = ps - gamma * xs;
  return std::abs(q * q / (Omega * Omega) + xs * xs - A_q * A_q);
}

QuantumLC quantum_lc(const LindbladParams& params, const Drive& drive) {
  params.validate();
  require_cosine(drive, "quantum_lc");
  QuantumLC lc;
  lc.omega = params.omega;
  lc.gamma = params.gamma();
  lc.Omega = drive.kind() == Drive::Kind::cosine ? drive.Omega() : 0.0;
  const double k = params.omega * params.omega + lc.gamma * lc.gamma - lc.Omega * lc.Omega;
  const double f0t = drive.kind() == Drive::Kind::cosine ? drive.real_force_amplitude(params.omega)
                                                         : 0.0;
  lc.A_q = lc_amplitude(f0t, k, lc.gamma, lc.Omega);
  lc.phi_q = lag_phase(k, lc.gamma, lc.Omega);
  return lc;
}

double mean_n(double t, double n0, Complex a0, const LindbladParams& params, const Drive& drive) {
  params.validate();
  if (!(t >= 0.0) || !std::isfinite(t)) {
    throw InvalidParameters("mean_n: t must be finite and >= 0");
  }
  const double g = params.gamma();
  const double n_inf = params.nu / (2.0 * g);
  if (drive.is_zero()) {
    return n_inf + (n0 - n_inf) * std::exp(-2.0 * g * t);
  }
  return mean_n_ode(t, n0, a0, params, drive);
}

double mean_n_ode(double t, double n0, Complex a0, const LindbladParams& params,
                  const Drive& drive) {
  params.validate();
  if (!(t >= 0.0) || !std::isfinite(t)) {
    throw InvalidParameters("mean_n_ode: t must be finite and >= 0");
  }
  const double g = params.gamma();
  if (t == 0.0) return n0;
  double fastest = params.omega;
  for (const auto& h : drive.as_harmonics()) {
    fastest = std::max(fastest, std::abs(h.k) * drive.Omega());
  }
  const double h_nom = two_pi / (500.0 * fastest);
  const long steps = std::max(1L, static_cast<long>(std::ceil(t / h_nom)));
  const double h = t / static_cast<double>(steps);
  auto rhs = [&](double s, double n) {
    return params.nu - 2.0 * g * n + 2.0 * std::imag(drive(s) * mean_a(s, a0, params, drive));
  };
  double n = n0;
  for (long i = 0; i < steps; ++i) {
    const double s = static_cast<double>(i) * h;
    const double k1 = rhs(s, n);
    const double k2 = rhs(s + 0.5 * h, n + 0.5 * h * k1);
    const double k3 = rhs(s + 0.5 * h, n + 0.5 * h * k2);
    const double k4 = rhs(s + h, n + h * k3);
    n += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return n;
}

double limit_cycle_nbar(const LindbladParams& params, const Drive& drive) {
  const QuantumLC lc = quantum_lc(params, drive);
  const double f0t = drive.kind() == Drive::Kind::cosine ? drive.real_force_amplitude(params.omega)
                                                         : 0.0;
  const double g = lc.gamma;
  return params.nu / (2.0 * g) + f0t * lc.A_q / (4.0 * g * params.omega) *
                                     (g * std::cos(lc.phi_q) - lc.Omega * std::sin(lc.phi_q));
}

double limit_cycle_n(double t, const LindbladParams& params, const Drive& drive) {
  const QuantumLC lc = quantum_lc(params, drive);
  const double f0t = drive.kind() == Drive::Kind::cosine ? drive.real_force_amplitude(params.omega)
                                                         : 0.0;
  return limit_cycle_nbar(params, drive) +
         f0t * lc.A_q / (4.0 * params.omega) * std::cos(2.0 * lc.Omega * t + lc.phi_q);
}

double limit_cycle_nbar_from_amplitude(const LindbladParams& params, const Drive& drive,
                                       int samples) {
  params.validate();
  if (samples < 1) {
    throw InvalidParameters("limit_cycle_nbar_from_amplitude: samples must be >= 1");
  }
  const double g = params.gamma();
  const double W = drive.is_zero() ? 0.0 : drive.Omega();
  const double period = W > 0.0 ? two_pi / W : 0.0;
  double s = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double t = period * i / samples;
    s += std::norm(forced_response_limit(t, params.omega, g, drive));
  }
  return params.nu / (2.0 * g) + s / samples;
}

double resonance_frequency(const LindbladParams& params) {
  params.validate();
  const double g = params.gamma();
  if (!(g < params.omega)) {
    throw InvalidParameters("resonance frequency requires gamma < omega");
  }
  return std::sqrt(params.omega * params.omega - g * g);
}

ResonanceScan resonance_scan(const LindbladParams& params, double f0, double Omega_lo,
                             double Omega_hi, int samples) {
  params.validate();
  if (samples < 3) {
    throw InvalidParameters("resonance_scan: samples must be >= 3");
  }
  if (!(Omega_hi > Omega_lo) || !(Omega_lo >= 0.0) || !std::isfinite(Omega_hi)) {
    throw InvalidParameters("resonance_scan: empty or invalid Omega range");
  }
  auto amplitude = [&](double W) { return quantum_lc(params, Drive::cosine(f0, W)).A_q; };

  ResonanceScan scan;
  scan.points.resize(static_cast<std::size_t>(samples));
  for (int i = 0; i < samples; ++i) {
    const double W = Omega_lo + (Omega_hi - Omega_lo) * i / (samples - 1);
    const Drive d = Drive::cosine(f0, W);
    const QuantumLC lc = quantum_lc(params, d);
    scan.points[i] = {W, lc.A_q, lc.phi_q, limit_cycle_nbar(params, d)};
    if (lc.A_q > scan.points[scan.argmax].A_q) scan.argmax = static_cast<std::size_t>(i);
  }

  const std::size_t lo = scan.argmax == 0 ? 0 : scan.argmax - 1;
  const std::size_t hi = std::min(scan.points.size() - 1, scan.argmax + 1);
  double a = scan.points[lo].Omega;
  double b = scan.points[hi].Omega;
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = amplitude(c);
  double fd = amplitude(d);
  for (int it = 0; it < 200 && b - a > 1e-15 * std::max(1.0, b); ++it) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = amplitude(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = amplitude(d);
    }
  }
  scan.Omega_peak = 0.5 * (a + b);
  scan.A_peak = amplitude(scan.Omega_peak);
  if (scan.points[scan.argmax].A_q > scan.A_peak) {
    scan.Omega_peak = scan.points[scan.argmax].Omega;
    scan.A_peak = scan.points[scan.argmax].A_q;
  }
  return scan;
}

}  // namespace lindosc
