#pragma once

// Displaced-thermal (Gaussian) densities
//   rho = Z e^{beta a^+} e^{sigma n} e^{beta^* a},  Z = b e^{-|beta|^2 / b},
// with u = e^sigma, b = 1 - u and centre alpha = beta / b. The class is closed
// under the driven Lindblad flow: u obeys a Riccati equation and alpha the
// damped, forced amplitude equation.

#include <vector>

#include "lindosc/fock.hpp"
#include "lindosc/params.hpp"

namespace lindosc {

/// rho = e^c e^{beta a^+} e^{sigma n} e^{beta^* a}. Not necessarily normalized.
struct ProductForm {
  double c = 0.0;
  Complex beta;
  double sigma = 0.0;
};

/// rho = e^{z + v n + delta a^+ + delta^* a}.
struct PureExponentialForm {
  double z = 0.0;
  double v = 0.0;
  Complex delta;
};

/// Product form with v < 0 -> sigma = v, beta = delta (e^v - 1)/v,
/// c = z - |delta/v|^2 (1 + v - e^v). Throws SingularTransform for v = 0
/// and InvalidParameters for v > 0 or non-finite input.
ProductForm disentangle(const PureExponentialForm& p);

/// Inverse of disentangle.
PureExponentialForm entangle(const ProductForm& g);

/// Unit-trace Gaussian density. u is stored rather than sigma so that the
/// coherent limit u = 0 is an ordinary value.
class GaussianState {
 public:
  /// Largest accepted u; beyond it the state is not normalizable in practice.
  static constexpr double max_u = 1.0 - 1e-12;
  /// u below this is treated as the pure (coherent) limit.
  static constexpr double pure_u = 1e-300;

  /// u in [0, max_u], alpha finite.
  static GaussianState from_u_alpha(double u, Complex alpha);
  static GaussianState coherent(Complex alpha);
  static GaussianState thermal(double u) { return from_u_alpha(u, {}); }
  /// Requires sigma < 0 and c = ln Z within 1e-12.
  static GaussianState from_product(const ProductForm& p);

  double u() const noexcept { return u_; }
  double b() const noexcept { return 1.0 - u_; }
  /// ln u; -infinity in the pure limit.
  double sigma() const noexcept;
  Complex alpha() const noexcept { return alpha_; }
  Complex beta() const noexcept { return alpha_ * b(); }
  /// ln Z = ln b - |beta|^2 / b = ln b - b |alpha|^2.
  double c() const noexcept;
  double Z() const noexcept;
  bool pure() const noexcept { return u_ < pure_u; }

  /// Throws SingularTransform in the pure limit.
  ProductForm product() const;

 private:
  GaussianState(double u, Complex alpha) : u_(u), alpha_(alpha) {}

  double u_;
  Complex alpha_;
};

/// Riccati solution with u(0) = u0 in [0, 1):
///   u = ((mu u0 - nu) e^{-2 g t} + nu (1 - u0)) / ((mu u0 - nu) e^{-2 g t} + mu (1 - u0)).
double solve_u(double t, double u0, const LindbladParams& params);

/// alpha0 e^{-(i w + g) t} + forced response.
Complex solve_alpha(double t, Complex alpha0, const LindbladParams& params, const Drive& drive);

/// The Gaussian state reached from g0 after time t.
GaussianState gaussian_flow(const GaussianState& g0, double t, const LindbladParams& params,
                            const Drive& drive);

/// Explicit Fock matrix of g, renormalized over the truncation.
///
/// Throws TruncationOverflow when dim < 4|alpha|^2 + 10 or when the weight
/// lost above the truncation exceeds `max_deficit`.
DensityMatrix materialize(const GaussianState& g, FockDim dim, double max_deficit = 1e-8);

struct GaussianExpectations {
  Complex a;
  Complex adag;
  double n = 0.0;
  double x = 0.0;
  double p = 0.0;
};

GaussianExpectations gaussian_expectations(const GaussianState& g, double omega);

/// <alpha_pt| rho |alpha_pt> = b e^{-b |alpha_pt - alpha|^2}.
double husimi_value(Complex alpha_pt, const GaussianState& g);

/// Phase-space coordinates, alpha = (omega x + i p)/sqrt(2 omega).
Complex alpha_from_xp(double x, double p, double omega);
double x_of(Complex alpha, double omega);
double p_of(Complex alpha, double omega);

struct PhaseWindow {
  double x_min = -1.0;
  double x_max = 1.0;
  double p_min = -1.0;
  double p_max = 1.0;
  int nx = 64;
  int np = 64;
};

/// Row-major samples: values[j * nx + i] at (x_axis[i], p_axis[j]).
struct HusimiGrid {
  std::vector<double> x_axis;
  std::vector<double> p_axis;
  std::vector<double> values;
  double omega = 1.0;
  double t = 0.0;

  double at(int i, int j) const { return values[static_cast<std::size_t>(j) * x_axis.size() + i]; }
  double peak() const;
  /// (1/pi) * integral over d^2 alpha by the trapezoid rule; d^2 alpha = dx dp / 2.
  double normalization() const;
  bool contains(double x, double p) const;

  struct Peak {
    double value = 0.0;
    double x = 0.0;
    double p = 0.0;
  };
  /// Peak height and position from the largest sample and its four
  /// neighbours, by parabolic interpolation of log values (exact for a
  /// Gaussian). NaN fields when the largest sample lies on the border.
  Peak fit_peak() const;
};

/// Samples the window uniformly, endpoints included (nx, np >= 2).
HusimiGrid husimi_grid(const GaussianState& g, const PhaseWindow& window, double omega,
                       double t = 0.0);

/// Periodic state u = nu/mu, alpha = alpha_lc(t).
GaussianState limit_cycle_state(double t, const LindbladParams& params, const Drive& drive);

/// -ln(1 - u) - u ln(u) / (1 - u). Returns 0 for u <= 1e-15.
double entropy(double u);

/// Long-time entropy -(nu ln nu - mu ln mu + 2g ln 2g) / 2g.
double entropy_infinity(const LindbladParams& params);

}  // namespace lindosc
