#pragma once

#include <complex>
#include <string>
#include <vector>

namespace lindosc {

using Complex = std::complex<double>;

/// Oscillator frequency and Lindblad loss/pump rates (hbar = 1, unit mass).
///
/// Valid parameters satisfy omega > 0 and mu > nu >= 0, so that the
/// dissipation constant gamma = (mu - nu)/2 is strictly positive.
struct LindbladParams {
  double omega = 1.0;
  double mu = 0.2;
  double nu = 0.0;

  double gamma() const noexcept { return 0.5 * (mu - nu); }
  double gamma_prime() const noexcept { return 0.5 * (mu + nu); }
  /// Thermal occupation of the environment, nu / (mu - nu).
  double nbar() const noexcept { return nu / (mu - nu); }

  /// Throws InvalidParameters naming the violated invariant.
  void validate() const;
};

/// External force f(t) entering H = w(n + 1/2) - f^*(t) a^+ - f(t) a.
///
/// The real-force form H = w(n + 1/2) - f~(t) x uses f~ = sqrt(2w) f; see
/// real_force_amplitude().
class Drive {
 public:
  enum class Kind { none, cosine, fourier };

  struct Harmonic {
    int k = 0;
    Complex c;
  };

  static Drive none();
  /// f(t) = f0 cos(Omega t).
  static Drive cosine(double f0, double Omega);
  /// f(t) = sum_k c_k e^{i k Omega t}; requires Omega > 0.
  static Drive fourier(double Omega, std::vector<Harmonic> harmonics);

  Kind kind() const noexcept { return kind_; }
  double f0() const noexcept { return f0_; }
  double Omega() const noexcept { return Omega_; }
  const std::vector<Harmonic>& harmonics() const noexcept { return harmonics_; }
  bool is_zero() const noexcept;

  Complex operator()(double t) const noexcept;

  /// sqrt(2 omega) f0 for the cosine drive.
  double real_force_amplitude(double omega) const noexcept;

  /// The drive written as Fourier harmonics (cosine -> c_{+1} = c_{-1} = f0/2).
  std::vector<Harmonic> as_harmonics() const;

  std::string describe() const;

 private:
  Kind kind_ = Kind::none;
  double f0_ = 0.0;
  double Omega_ = 0.0;
  std::vector<Harmonic> harmonics_;
};

/// Driven response of da/dt = -(i w + g) a + i f^*(t) with a(0) = 0:
/// F(t) = i int_0^t f^*(s) e^{-(i w + g)(t - s)} ds, in closed form.
Complex forced_response(double t, double omega, double gamma, const Drive& drive);

/// Long-time limit of forced_response (the limit-cycle amplitude).
Complex forced_response_limit(double t, double omega, double gamma, const Drive& drive);

}  // namespace lindosc
