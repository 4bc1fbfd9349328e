#pragma once

// Coherent-state evolution under H = w~(n + 1/2) - f^* a^+ - f a with the
// complex frequency w~ = w - i g and f(t) = f0 cos(Omega t). The state stays
// coherent, psi(t) = e^{A + B a0 - i w~ t / 2} e^{-|a0|^2/2} e^{alpha(t) a^+}|0>.

#include <optional>

#include "lindosc/fock.hpp"
#include "lindosc/params.hpp"

namespace lindosc {

struct NHParams {
  double omega = 1.0;
  double gamma = 0.1;
  double f0 = 0.0;
  double Omega = 0.0;

  Complex omega_tilde() const noexcept { return {omega, -gamma}; }
  /// The Lindblad model with the same mean-value dynamics: mu = 2g, nu = 0.
  LindbladParams lindblad() const noexcept { return {omega, 2.0 * gamma, 0.0}; }
  Drive drive() const;

  /// omega > 0, gamma > 0, and Omega > 0 whenever f0 != 0.
  void validate() const;
};

/// A, B, C with A(0) = B(0) = C(0) = 0, solving
///   i B' = -f e^{-i w~ t},  i C' = w~ C - f^*,  i A' = -f C.
struct NHCoefficients {
  Complex A;
  Complex B;
  Complex C;
};

NHCoefficients abc(double t, const NHParams& p);

struct NHExpectations {
  /// alpha(t) = C(t) + a0 e^{-i w~ t}.
  Complex a;
  double n = 0.0;
};

NHExpectations nh_expectations(double t, Complex alpha0, const NHParams& p);

/// <psi(t)|psi(t)> from the prefactor:
/// exp(-g t + 2 Re A + 2 Re(B a0) - |a0|^2 + |alpha(t)|^2).
double nh_norm_prefactor(double t, Complex alpha0, const NHParams& p);

/// Force-free norm as the Fock series sum_n |c_n|^2 e^{-2 g (n + 1/2) t}
/// over the truncated coherent state; throws InvalidParameters when driven.
double nh_norm_series(double t, Complex alpha0, const NHParams& p, FockDim dim);

struct NHNorm {
  double prefactor = 0.0;
  /// Present only for f0 = 0.
  std::optional<double> series;
};

/// Both norm routes; enforces the truncation rule for alpha0 and alpha(t).
NHNorm nh_norm(double t, Complex alpha0, const NHParams& p, FockDim dim);

/// |<alpha_pt|alpha(t)>|^2 = e^{-|alpha_pt - alpha(t)|^2}.
double nh_husimi(Complex alpha_pt, double t, Complex alpha0, const NHParams& p);

}  // namespace lindosc
