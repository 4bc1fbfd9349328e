#pragma once

// Mean-value dynamics: the classical forced oscillator and the closed
// equations for <a> and <n> under Lindblad evolution.

#include <vector>

#include "lindosc/params.hpp"

namespace lindosc {

// ---- classical reference: x'' + 2 g x' + w0^2 x = f0~ cos(Omega t) ----

struct ClassicalDrive {
  double f0_tilde = 0.0;
  double Omega = 0.0;
};

struct ClassicalLC {
  double A = 0.0;
  /// In (-pi, 0].
  double phi = 0.0;
  double omega0 = 0.0;
  double gamma = 0.0;
  double Omega = 0.0;
  /// Peak of A over Omega and its location (0 when 2 g^2 >= w0^2).
  double Omega_R = 0.0;
  double A_R = 0.0;
};

ClassicalLC classical_lc(double omega0, double gamma, const ClassicalDrive& drive);

struct PhasePoint {
  double x = 0.0;
  double v = 0.0;
};

/// Exact solution for (x0, v0) at t = 0: the limit cycle plus the homogeneous
/// part in its under-, critically or overdamped branch.
PhasePoint classical_solution(double x0, double v0, double t, double omega0, double gamma,
                              const ClassicalDrive& drive);

/// w0 = sqrt(w^2 + g^2): the classical frequency whose equation <x> obeys.
double omega0_from_quantum(double omega, double gamma);

// ---- quantum mean values ----

/// e^{-(i w + g) t} a0 + forced response.
Complex mean_a(double t, Complex a0, const LindbladParams& params, const Drive& drive);

/// Degenerate Omega (Omega = 0) reduces the ellipse to a segment.
struct QuantumLC {
  double A_q = 0.0;
  /// In (-pi, 0], continuous across resonance.
  double phi_q = 0.0;
  double omega = 0.0;
  double gamma = 0.0;
  double Omega = 0.0;

  double x(double t) const;
  double p(double t) const;
  /// |(p - g x)^2 / Omega^2 + x^2 - A_q^2| for x, p taken from the
  /// limit-cycle amplitude of mean_a (a route independent of A_q, phi_q).
  double ellipse_residual(double t, const LindbladParams& params, const Drive& drive) const;
};

/// Requires a cosine drive (or none).
QuantumLC quantum_lc(const LindbladParams& params, const Drive& drive);

/// <n>(t). Force-free: nu/2g + (n0 - nu/2g) e^{-2 g t}. Driven: RK4 on
/// dn/dt = nu - 2 g n + 2 Im(f <a>), with <a> from mean_a and step
/// 2 pi / (500 max(w, Omega)).
double mean_n(double t, double n0, Complex a0, const LindbladParams& params, const Drive& drive);

/// The RK4 route of mean_n, used even when the drive vanishes.
double mean_n_ode(double t, double n0, Complex a0, const LindbladParams& params,
                  const Drive& drive);

/// Long-time average n-bar of <n> on the limit cycle (cosine drive).
double limit_cycle_nbar(const LindbladParams& params, const Drive& drive);

/// <n> on the limit cycle, n-bar + (f0~ A_q / 4w) cos(2 Omega t + phi_q).
double limit_cycle_n(double t, const LindbladParams& params, const Drive& drive);

/// nu/2g + period mean of |alpha_lc|^2 by the periodic trapezoid rule.
double limit_cycle_nbar_from_amplitude(const LindbladParams& params, const Drive& drive,
                                       int samples = 64);

struct ResonancePoint {
  double Omega = 0.0;
  double A_q = 0.0;
  double phi_q = 0.0;
  double nbar = 0.0;
};

struct ResonanceScan {
  std::vector<ResonancePoint> points;
  /// Index of the largest A_q on the grid.
  std::size_t argmax = 0;
  /// Golden-section refinement of the peak around argmax.
  double Omega_peak = 0.0;
  double A_peak = 0.0;
};

/// Uniform scan of [Omega_lo, Omega_hi] with `samples` >= 3 points using the
/// drive amplitude f0 of `drive`.
ResonanceScan resonance_scan(const LindbladParams& params, double f0, double Omega_lo,
                             double Omega_hi, int samples);

/// sqrt(w^2 - g^2); requires g < w.
double resonance_frequency(const LindbladParams& params);

}  // namespace lindosc
