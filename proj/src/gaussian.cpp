#include "lindosc/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "lindosc/errors.hpp"

namespace lindosc {

namespace {

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

double xlogx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

}  // namespace

ProductForm disentangle(const PureExponentialForm& p) {
  if (!std::isfinite(p.z) || !std::isfinite(p.v) || !finite(p.delta)) {
    throw InvalidParameters("disentangle: non-finite coefficients");
  }
  if (p.v == 0.0) {
    throw SingularTransform("disentangle: v = 0 has no normalizable product form");
  }
  if (p.v > 0.0) {
    throw InvalidParameters("disentangle: v must be < 0");
  }
  const double em1 = std::expm1(p.v);
  const double q = std::norm(p.delta / p.v);
  return {p.z + q * (em1 - p.v), p.delta * (em1 / p.v), p.v};
}

PureExponentialForm entangle(const ProductForm& g) {
  if (!std::isfinite(g.c) || !finite(g.beta) || std::isnan(g.sigma)) {
    throw InvalidParameters("entangle: non-finite coefficients");
  }
  if (g.sigma == 0.0 || !std::isfinite(g.sigma)) {
    throw SingularTransform("entangle: sigma must be finite and nonzero");
  }
  if (g.sigma > 0.0) {
    throw InvalidParameters("entangle: sigma must be < 0");
  }
  const double em1 = std::expm1(g.sigma);
  const Complex delta = g.beta * (g.sigma / em1);
  const double q = std::norm(g.beta / em1);
  return {g.c - q * (em1 - g.sigma), g.sigma, delta};
}

GaussianState GaussianState::from_u_alpha(double u, Complex alpha) {
  if (!(u >= 0.0) || !(u <= max_u)) {
    std::ostringstream os;
    os << "Gaussian state needs 0 <= u <= 1 - 1e-12 (got u = " << u << ")";
    throw InvalidState(os.str());
  }
  if (!finite(alpha)) {
    throw InvalidState("Gaussian state centre is not finite");
  }
  return GaussianState(u, alpha);
}

GaussianState GaussianState::coherent(Complex alpha) { return from_u_alpha(0.0, alpha); }

GaussianState GaussianState::from_product(const ProductForm& p) {
  if (!(p.sigma < 0.0) || !finite(p.beta) || !std::isfinite(p.c)) {
    throw InvalidState("product form needs sigma < 0 and finite c, beta");
  }
  const double u = std::exp(p.sigma);
  const double b = -std::expm1(p.sigma);
  GaussianState g = from_u_alpha(u, p.beta / b);
  const double err = std::abs(p.c - g.c());
  if (err > 1e-12 * std::max(1.0, std::abs(p.c))) {
    std::ostringstream os;
    os.precision(17);
    os << "product form is not unit-trace: c = " << p.c << ", ln Z = " << g.c();
    throw InvalidState(os.str());
  }
  return g;
}

double GaussianState::sigma() const noexcept {
  return u_ > 0.0 ? std::log(u_) : -std::numeric_limits<double>::infinity();
}

double GaussianState::c() const noexcept { return std::log1p(-u_) - b() * std::norm(alpha_); }

double GaussianState::Z() const noexcept { return std::exp(c()); }

ProductForm GaussianState::product() const {
  if (pure()) {
    throw SingularTransform("pure coherent state has no finite product form");
  }
  return {c(), beta(), sigma()};
}

double solve_u(double t, double u0, const LindbladParams& params) {
  params.validate();
  if (!(t >= 0.0) || !std::isfinite(t)) {
    throw InvalidParameters("solve_u: t must be finite and >= 0");
  }
  if (!(u0 >= 0.0) || !(u0 < 1.0)) {
    throw InvalidParameters("solve_u: u0 must lie in [0, 1)");
  }
  const double mu = params.mu;
  const double nu = params.nu;
  const double e = std::exp(-2.0 * params.gamma() * t);
  const double s = (mu * u0 - nu) * e;
  return (s + nu * (1.0 - u0)) / (s + mu * (1.0 - u0));
}

Complex solve_alpha(double t, Complex alpha0, const LindbladParams& params, const Drive& drive) {
  params.validate();
  if (!(t >= 0.0) || !std::isfinite(t)) {
    throw InvalidParameters("solve_alpha: t must be finite and >= 0");
  }
  const double g = params.gamma();
  return alpha0 * std::exp(Complex(-g * t, -params.omega * t)) +
         forced_response(t, params.omega, g, drive);
}

GaussianState gaussian_flow(const GaussianState& g0, double t, const LindbladParams& params,
                            const Drive& drive) {
  const double u = solve_u(t, g0.u(), params);
  const Complex a = solve_alpha(t, g0.alpha(), params, drive);
  return GaussianState::from_u_alpha(u, a);
}

DensityMatrix materialize(const GaussianState& g, FockDim dim, double max_deficit) {
  check_truncation(g.alpha(), dim);
  if (g.pure()) {
    return DensityMatrix::pure(coherent_state(g.alpha(), dim));
  }
  const Eigen::Index d = dim.index();
  const Complex beta = g.beta();
  const double abs_beta = std::abs(beta);
  const double log_beta = abs_beta > 0.0 ? std::log(abs_beta) : 0.0;
  const double theta = std::arg(beta);
  const double log_u = std::log(g.u());
  const double log_z = g.c();

  std::vector<double> lf(static_cast<std::size_t>(d) + 1);
  for (std::size_t j = 0; j < lf.size(); ++j) lf[j] = std::lgamma(static_cast<double>(j) + 1.0);

  // rho_mn = Z e^{i(m-n) theta} sum_k |beta|^{m+n-2k} u^k sqrt(m! n!) / (k! (m-k)! (n-k)!);
  // all terms are positive, so the sum is accumulated in log space.
  ComplexMatrix m_rho(d, d);
  std::vector<double> logs(static_cast<std::size_t>(d));
  for (Eigen::Index n = 0; n < d; ++n) {
    for (Eigen::Index m = n; m < d; ++m) {
      double peak = -std::numeric_limits<double>::infinity();
      std::size_t cnt = 0;
      for (Eigen::Index k = 0; k <= n; ++k) {
        const Eigen::Index shift = m + n - 2 * k;
        if (shift > 0 && abs_beta == 0.0) continue;
        const double lt = static_cast<double>(shift) * log_beta + static_cast<double>(k) * log_u +
                          0.5 * (lf[m] + lf[n]) - lf[k] - lf[m - k] - lf[n - k];
        logs[cnt++] = lt;
        peak = std::max(peak, lt);
      }
      double mag = 0.0;
      if (cnt > 0) {
        double s = 0.0;
        for (std::size_t i = 0; i < cnt; ++i) s += std::exp(logs[i] - peak);
        mag = std::exp(log_z + peak + std::log(s));
      }
      const Complex v = std::polar(mag, static_cast<double>(m - n) * theta);
      m_rho(m, n) = v;
      m_rho(n, m) = std::conj(v);
    }
  }

  const double deficit = 1.0 - m_rho.trace().real();
  if (deficit > max_deficit) {
    const double extra = std::ceil(std::log(deficit / max_deficit) / -log_u) + 1.0;
    const auto need = static_cast<std::size_t>(static_cast<double>(d) + std::max(extra, 1.0));
    std::ostringstream os;
    os << "truncation overflow: Gaussian state loses " << deficit
       << " of its weight above the truncation; requires dim >= about " << need << " (have " << d
       << ")";
    throw TruncationOverflow(os.str(), need);
  }
  return DensityMatrix::normalized(std::move(m_rho));
}

GaussianExpectations gaussian_expectations(const GaussianState& g, double omega) {
  GaussianExpectations e;
  e.a = g.alpha();
  e.adag = std::conj(e.a);
  e.n = g.u() / g.b() + std::norm(e.a);
  e.x = x_of(e.a, omega);
  e.p = p_of(e.a, omega);
  return e;
}

double husimi_value(Complex alpha_pt, const GaussianState& g) {
  const double b = g.b();
  return b * std::exp(-b * std::norm(alpha_pt - g.alpha()));
}

Complex alpha_from_xp(double x, double p, double omega) {
  return Complex(omega * x, p) / std::sqrt(2.0 * omega);
}

double x_of(Complex alpha, double omega) { return std::sqrt(2.0 / omega) * alpha.real(); }

double p_of(Complex alpha, double omega) { return std::sqrt(2.0 * omega) * alpha.imag(); }

double HusimiGrid::peak() const {
  return values.empty() ? 0.0 : *std::max_element(values.begin(), values.end());
}

double HusimiGrid::normalization() const {
  const std::size_t nx = x_axis.size();
  const std::size_t np = p_axis.size();
  if (nx < 2 || np < 2) return 0.0;
  const double dx = (x_axis.back() - x_axis.front()) / static_cast<double>(nx - 1);
  const double dp = (p_axis.back() - p_axis.front()) / static_cast<double>(np - 1);
  double s = 0.0;
  for (std::size_t j = 0; j < np; ++j) {
    const double wj = (j == 0 || j + 1 == np) ? 0.5 : 1.0;
    for (std::size_t i = 0; i < nx; ++i) {
      const double wi = (i == 0 || i + 1 == nx) ? 0.5 : 1.0;
      s += wi * wj * values[j * nx + i];
    }
  }
  return s * dx * dp / (2.0 * std::numbers::pi);
}

bool HusimiGrid::contains(double x, double p) const {
  return !x_axis.empty() && !p_axis.empty() && x >= x_axis.front() && x <= x_axis.back() &&
         p >= p_axis.front() && p <= p_axis.back();
}

HusimiGrid::Peak HusimiGrid::fit_peak() const {
  constexpr double nan = std::numeric_limits<double>::quiet_NaN();
  const std::size_t nx = x_axis.size();
  const std::size_t np = p_axis.size();
  if (values.empty()) return {nan, nan, nan};
  const auto k = static_cast<std::size_t>(
      std::distance(values.begin(), std::max_element(values.begin(), values.end())));
  const std::size_t i = k % nx;
  const std::size_t j = k / nx;
  if (i == 0 || j == 0 || i + 1 == nx || j + 1 == np) return {nan, nan, nan};
  const double l0 = std::log(values[k]);
  // vertex of the parabola through (-h, lm), (0, l0), (h, lp): offset s h, height l0 + (lp - lm) s / 4
  auto vertex = [l0](double lm, double lp) {
    const double curv = lm - 2.0 * l0 + lp;
    const double s = 0.5 * (lm - lp) / curv;
    return std::pair{s, 0.25 * (lp - lm) * s};
  };
  const auto [sx, hx] = vertex(std::log(values[k - 1]), std::log(values[k + 1]));
  const auto [sp, hp] = vertex(std::log(values[k - nx]), std::log(values[k + nx]));
  const double dx = x_axis[1] - x_axis[0];
  const double dp = p_axis[1] - p_axis[0];
  // log density is separable in x and p, so the two corrections add
  return {std::exp(l0 + hx + hp), x_axis[i] + sx * dx, p_axis[j] + sp * dp};
}

HusimiGrid husimi_grid(const GaussianState& g, const PhaseWindow& w, double omega, double t) {
  if (w.nx < 2 || w.np < 2 || !(w.x_max > w.x_min) || !(w.p_max > w.p_min)) {
    throw InvalidParameters("husimi_grid: window needs nx, np >= 2 and positive extent");
  }
  if (!(omega > 0.0)) {
    throw InvalidParameters("husimi_grid: omega must be > 0");
  }
  HusimiGrid grid;
  grid.omega = omega;
  grid.t = t;
  grid.x_axis.resize(static_cast<std::size_t>(w.nx));
  grid.p_axis.resize(static_cast<std::size_t>(w.np));
  for (int i = 0; i < w.nx; ++i) {
    grid.x_axis[i] = w.x_min + (w.x_max - w.x_min) * i / (w.nx - 1);
  }
  for (int j = 0; j < w.np; ++j) {
    grid.p_axis[j] = w.p_min + (w.p_max - w.p_min) * j / (w.np - 1);
  }
  grid.values.resize(static_cast<std::size_t>(w.nx) * static_cast<std::size_t>(w.np));
  for (int j = 0; j < w.np; ++j) {
    for (int i = 0; i < w.nx; ++i) {
      grid.values[static_cast<std::size_t>(j) * w.nx + i] =
          husimi_value(alpha_from_xp(grid.x_axis[i], grid.p_axis[j], omega), g);
    }
  }
  return grid;
}

GaussianState limit_cycle_state(double t, const LindbladParams& params, const Drive& drive) {
  params.validate();
  return GaussianState::from_u_alpha(params.nu / params.mu,
                                     forced_response_limit(t, params.omega, params.gamma(), drive));
}

double entropy(double u) {
  if (!(u >= 0.0) || !(u <= GaussianState::max_u)) {
    std::ostringstream os;
    os << "entropy: u must lie in [0, 1 - 1e-12] (got " << u << ")";
    throw InvalidParameters(os.str());
  }
  if (u <= 1e-15) return 0.0;
  return -std::log1p(-u) - u * std::log(u) / (1.0 - u);
}

double entropy_infinity(const LindbladParams& params) {
  params.validate();
  const double two_g = params.mu - params.nu;
  return -(xlogx(params.nu) - xlogx(params.mu) + xlogx(two_g)) / two_g;
}

}  // namespace lindosc
