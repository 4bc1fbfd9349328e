#pragma once

// Reference computations for the tests. None of them calls the library code
// they check: operators are built entry by entry, the generator is applied as
// dense matrix products, and ODEs are integrated by a plain fine-step RK4.

#include <cmath>
#include <complex>
#include <functional>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using Complex = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

inline Mat annihilation(int d) {
  Mat a = Mat::Zero(d, d);
  for (int k = 1; k < d; ++k) a(k - 1, k) = std::sqrt(static_cast<double>(k));
  return a;
}

inline Mat number(int d) {
  Mat n = Mat::Zero(d, d);
  for (int k = 0; k < d; ++k) n(k, k) = k;
  return n;
}

// Generator by dense products of the truncated operators; f is the drive
// value at the time of evaluation.
inline Mat lindblad(const Mat& rho, double omega, double mu, double nu, Complex f) {
  const int d = static_cast<int>(rho.rows());
  const Mat a = annihilation(d);
  const Mat ad = a.adjoint();
  const Mat H = omega * (number(d) + 0.5 * Mat::Identity(d, d)) - std::conj(f) * ad - f * a;
  const Complex I(0.0, 1.0);
  return -I * (H * rho - rho * H) +
         0.5 * mu * (2.0 * a * rho * ad - ad * a * rho - rho * ad * a) +
         0.5 * nu * (2.0 * ad * rho * a - a * ad * rho - rho * a * ad);
}

// exp(M) for Hermitian M by eigendecomposition.
inline Mat expm_hermitian(const Mat& m) {
  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (m + m.adjoint()));
  const Eigen::VectorXd ev = es.eigenvalues();
  Vec e(ev.size());
  for (Eigen::Index i = 0; i < ev.size(); ++i) e(i) = std::exp(ev(i));
  return es.eigenvectors() * e.asDiagonal() * es.eigenvectors().adjoint();
}

// exp(M) by a Taylor series; for nilpotent or small-norm M only.
inline Mat expm_series(const Mat& m, int terms = 200) {
  Mat sum = Mat::Identity(m.rows(), m.cols());
  Mat term = sum;
  for (int k = 1; k < terms; ++k) {
    term = term * m / static_cast<double>(k);
    sum += term;
    if (term.cwiseAbs().maxCoeff() < 1e-300) break;
  }
  return sum;
}

// Coherent amplitudes e^{-|a|^2/2} a^n / sqrt(n!) without renormalization.
inline Vec coherent(Complex alpha, int d) {
  Vec v(d);
  Complex c = std::exp(-0.5 * std::norm(alpha));
  for (int n = 0; n < d; ++n) {
    v(n) = c;
    c *= alpha / std::sqrt(static_cast<double>(n + 1));
  }
  return v;
}

// Fixed-step RK4 for y' = f(t, y) over [t0, t1] with at least `steps` steps.
template <class Y>
Y rk4(const std::function<Y(double, const Y&)>& f, Y y, double t0, double t1, long steps) {
  if (t1 == t0) return y;
  const double h = (t1 - t0) / static_cast<double>(steps);
  for (long i = 0; i < steps; ++i) {
    const double t = t0 + static_cast<double>(i) * h;
    const Y k1 = f(t, y);
    const Y k2 = f(t + 0.5 * h, y + (0.5 * h) * k1);
    const Y k3 = f(t + 0.5 * h, y + (0.5 * h) * k2);
    const Y k4 = f(t + h, y + h * k3);
    y = y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return y;
}

// -sum p ln p for the geometric distribution (1 - u) u^n.
inline double geometric_entropy(double u) {
  double s = 0.0, p = 1.0 - u;
  for (int n = 0; n < 200000 && p > 1e-300; ++n, p *= u) s -= p * std::log(p);
  return s;
}

// Random full-rank density on the lowest `support` of `d` levels.
inline Mat random_density(std::mt19937_64& rng, int d, int support) {
  std::normal_distribution<double> normal;
  Mat g = Mat::Zero(d, support);
  for (int i = 0; i < support; ++i)
    for (int j = 0; j < support; ++j) g(i, j) = Complex(normal(rng), normal(rng));
  Mat rho = g * g.adjoint();
  return rho / rho.trace();
}

// Random Hermitian matrix; neither positive nor normalized.
inline Mat random_hermitian(std::mt19937_64& rng, int d) {
  std::normal_distribution<double> normal;
  Mat m(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) m(i, j) = Complex(normal(rng), normal(rng));
  return 0.5 * (m + m.adjoint());
}

inline double max_abs(const Mat& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace oracle
