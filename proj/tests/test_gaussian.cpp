#include <doctest.h>

#include <cmath>
#include <random>

#include "lindosc/errors.hpp"
#include "lindosc/gaussian.hpp"
#include "lindosc/lindblad.hpp"
#include "oracles.hpp"

using namespace lindosc;

namespace {

// D(alpha) = exp(alpha a^+ - alpha^* a) as exp(i H) with H Hermitian.
ComplexMatrix displacement(Complex alpha, int d) {
  const ComplexMatrix a = oracle::annihilation(d);
  const ComplexMatrix H = Complex(0.0, -1.0) * (alpha * a.adjoint() - std::conj(alpha) * a);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(0.5 * (H + H.adjoint()));
  Eigen::VectorXcd e(d);
  for (int i = 0; i < d; ++i) e(i) = std::exp(Complex(0.0, es.eigenvalues()(i)));
  return es.eigenvectors() * e.asDiagonal() * es.eigenvectors().adjoint();
}

// e^c e^{beta a^+} e^{sigma n} e^{beta^* a}, each factor exact in the truncation.
ComplexMatrix product_matrix(const ProductForm& g, int d) {
  const ComplexMatrix a = oracle::annihilation(d);
  ComplexMatrix D = ComplexMatrix::Zero(d, d);
  for (int k = 0; k < d; ++k) D(k, k) = std::exp(g.sigma * k);
  return std::exp(g.c) * oracle::expm_series(g.beta * a.adjoint()) * D *
         oracle::expm_series(std::conj(g.beta) * a);
}

}  // namespace

TEST_CASE("disentangling agrees with the dense exponential") {
  const int d = 80;
  const ComplexMatrix a = oracle::annihilation(d);
  for (const PureExponentialForm& p :
       {PureExponentialForm{0.0, -1.0, {1.0, 0.0}}, PureExponentialForm{0.3, -0.4, {0.5, -0.7}},
        PureExponentialForm{-1.0, -2.5, {0.0, 1.2}}}) {
    const ComplexMatrix X = p.z * ComplexMatrix::Identity(d, d) + p.v * oracle::number(d) +
                            p.delta * a.adjoint() + std::conj(p.delta) * a;
    const ComplexMatrix lhs = oracle::expm_hermitian(X);
    const ComplexMatrix rhs = product_matrix(disentangle(p), d);
    CHECK(oracle::max_abs(lhs.topLeftCorner(15, 15) - rhs.topLeftCorner(15, 15)) < 1e-10);
  }
}

TEST_CASE("disentangling at a hand-checked point") {
  const auto g = disentangle({0.0, -1.0, {1.0, 0.0}});
  CHECK(g.sigma == -1.0);
  CHECK(g.beta.real() == doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-15));
  CHECK(g.beta.imag() == 0.0);
  CHECK(g.c == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
}

TEST_CASE("entangle inverts disentangle") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  for (int i = 0; i < 50; ++i) {
    const PureExponentialForm p{U(rng), -1e-6 - 3.0 * (U(rng) + 1.0), {U(rng), U(rng)}};
    const auto q = entangle(disentangle(p));
    CHECK(q.z == doctest::Approx(p.z).epsilon(1e-12));
    CHECK(q.v == doctest::Approx(p.v).epsilon(1e-12));
    CHECK(std::abs(q.delta - p.delta) < 1e-9 * std::max(1.0, std::abs(p.delta)));
  }
}

TEST_CASE("degenerate and invalid transforms") {
  CHECK_THROWS_AS(disentangle({0.0, 0.0, {1.0, 0.0}}), SingularTransform);
  CHECK_THROWS_AS(disentangle({0.0, 0.5, {1.0, 0.0}}), InvalidParameters);
  CHECK_THROWS_AS(disentangle({0.0, std::nan(""), {1.0, 0.0}}), InvalidParameters);
  CHECK_THROWS_AS(entangle({0.0, {1.0, 0.0}, 0.0}), SingularTransform);
  CHECK_THROWS_AS(entangle({0.0, {1.0, 0.0}, 0.2}), InvalidParameters);
  CHECK_THROWS_AS(GaussianState::coherent({1.0, 0.0}).product(), SingularTransform);
}

TEST_CASE("state construction") {
  CHECK_THROWS_AS(GaussianState::from_u_alpha(1.0, {}), InvalidState);
  CHECK_THROWS_AS(GaussianState::from_u_alpha(-0.1, {}), InvalidState);
  CHECK_THROWS_AS(GaussianState::from_u_alpha(0.2, {std::nan(""), 0.0}), InvalidState);
  const auto g = GaussianState::from_u_alpha(0.3, {0.4, -0.2});
  CHECK(g.b() == doctest::Approx(0.7));
  CHECK(g.sigma() == doctest::Approx(std::log(0.3)));
  CHECK(std::abs(g.beta() - Complex(0.28, -0.14)) < 1e-15);
  CHECK(g.c() == doctest::Approx(std::log(0.7) - 0.7 * 0.2));
  const auto back = GaussianState::from_product(g.product());
  CHECK(back.u() == doctest::Approx(0.3).epsilon(1e-15));
  CHECK(std::abs(back.alpha() - g.alpha()) < 1e-15);
  auto wrong = g.product();
  wrong.c += 1e-6;
  CHECK_THROWS_AS(GaussianState::from_product(wrong), InvalidState);
  CHECK(GaussianState::coherent({1.0, 0.0}).pure());
  CHECK(std::isinf(GaussianState::coherent({}).sigma()));
}

TEST_CASE("materialized state is a displaced thermal state") {
  const int d = 40;
  for (const auto& g : {GaussianState::from_u_alpha(0.3, {0.9, -0.4}),
                        GaussianState::coherent({1.1, 0.7}), GaussianState::thermal(0.5)}) {
    const auto rho = materialize(g, FockDim(d));
    ComplexMatrix th = ComplexMatrix::Zero(80, 80);
    for (int k = 0; k < 80; ++k) th(k, k) = (1.0 - g.u()) * std::pow(g.u(), k);
    const ComplexMatrix D = displacement(g.alpha(), 80);
    const ComplexMatrix ref = D * th * D.adjoint();
    CHECK(oracle::max_abs(rho.matrix() - ref.topLeftCorner(d, d)) < 1e-9);

    const auto ops = ladder_ops(FockDim(d));
    const auto ex = gaussian_expectations(g, 1.3);
    CHECK(std::abs(expectation(ops.a, rho) - g.alpha()) < 1e-9);
    CHECK(std::abs(ex.a - g.alpha()) == 0.0);
    CHECK(ex.n == doctest::Approx(std::norm(g.alpha()) + g.u() / (1.0 - g.u())));
    CHECK(expectation(ops.n, rho).real() == doctest::Approx(ex.n).epsilon(1e-9));
    CHECK(ex.x == doctest::Approx(x_of(g.alpha(), 1.3)));
  }
  CHECK_THROWS_AS(materialize(GaussianState::coherent({3.0, 0.0}), FockDim(8)), TruncationOverflow);
  CHECK_THROWS_AS(materialize(GaussianState::thermal(0.9), FockDim(20)), TruncationOverflow);
}

TEST_CASE("husimi value equals the coherent-state overlap") {
  const auto g = GaussianState::from_u_alpha(0.4, {0.5, 0.3});
  const auto rho = materialize(g, FockDim(60));
  for (const Complex pt : {Complex(0.5, 0.3), Complex(-0.2, 1.0), Complex(1.5, -0.5)}) {
    const Eigen::VectorXcd c = oracle::coherent(pt, 60);
    const double ref = c.dot(rho.matrix() * c).real();
    CHECK(husimi_value(pt, g) == doctest::Approx(ref).epsilon(1e-10));
  }
  CHECK(husimi_value(g.alpha(), g) == doctest::Approx(g.b()));
}

TEST_CASE("phase-space coordinates") {
  const double w = 1.7;
  const Complex a = alpha_from_xp(0.3, -1.1, w);
  CHECK(x_of(a, w) == doctest::Approx(0.3));
  CHECK(p_of(a, w) == doctest::Approx(-1.1));
  CHECK(a.real() == doctest::Approx(w * 0.3 / std::sqrt(2 * w)));
}

TEST_CASE("grid sampling, normalization and peak fit") {
  const double w = 1.1;
  const auto g = GaussianState::from_u_alpha(2.0 / 3.0, alpha_from_xp(0.37, -0.81, w));
  const PhaseWindow win{-14.0, 14.0, -15.0, 15.0, 141, 121};
  const auto grid = husimi_grid(g, win, w, 0.5);
  CHECK(grid.x_axis.size() == 141);
  CHECK(grid.p_axis.size() == 121);
  CHECK(grid.x_axis.front() == -14.0);
  CHECK(grid.p_axis.back() == 15.0);
  CHECK(grid.at(5, 7) == doctest::Approx(husimi_value(alpha_from_xp(grid.x_axis[5],
                                                                    grid.p_axis[7], w), g)));
  CHECK(grid.normalization() == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(grid.peak() <= g.b());
  const auto pk = grid.fit_peak();
  CHECK(pk.value == doctest::Approx(g.b()).epsilon(1e-12));
  CHECK(pk.x == doctest::Approx(0.37).epsilon(1e-10));
  CHECK(pk.p == doctest::Approx(-0.81).epsilon(1e-10));
  CHECK(grid.contains(0.37, -0.81));
  CHECK_FALSE(grid.contains(15.0, 0.0));

  // Centre beyond the window: no interior maximum.
  const auto off = husimi_grid(GaussianState::coherent(alpha_from_xp(30.0, 0.0, w)), win, w);
  CHECK(std::isnan(off.fit_peak().value));
  CHECK_THROWS_AS(husimi_grid(g, PhaseWindow{0.0, 1.0, 0.0, 1.0, 1, 5}, w), InvalidParameters);
}

TEST_CASE("Riccati solution") {
  const LindbladParams loss{1.0, 0.6, 0.0};
  CHECK(solve_u(2.0, 0.5, loss) == doctest::Approx(0.2314752).epsilon(1e-7));
  for (const LindbladParams& p : {LindbladParams{1.0, 0.6, 0.4}, LindbladParams{1.0, 0.6, 0.0},
                                  LindbladParams{0.5, 2.0, 1.9}}) {
    for (double u0 : {0.0, 0.1, 0.5, 0.95}) {
      std::function<double(double, const double&)> f = [&](double, const double& u) {
        return p.nu - (p.mu + p.nu) * u + p.mu * u * u;
      };
      for (double t : {0.0, 0.5, 3.0, 20.0}) {
        const double ref = oracle::rk4<double>(f, u0, 0.0, t, 20000);
        CHECK(solve_u(t, u0, p) == doctest::Approx(ref).epsilon(1e-10));
      }
    }
  }
  CHECK_THROWS_AS(solve_u(1.0, 1.0, loss), InvalidParameters);
  CHECK_THROWS_AS(solve_u(-1.0, 0.2, loss), InvalidParameters);
}

TEST_CASE("centre follows the damped forced amplitude equation") {
  const LindbladParams p{1.1, 0.6, 0.4};
  const auto d = Drive::cosine(1.4, 1.095445);
  const Complex a0(0.3, -0.9);
  std::function<Complex(double, const Complex&)> f = [&](double t, const Complex& a) {
    return -Complex(p.gamma(), p.omega) * a + Complex(0.0, 1.4 * std::cos(1.095445 * t));
  };
  for (double t : {0.5, 4.0, 15.0}) {
    const Complex ref = oracle::rk4<Complex>(f, a0, 0.0, t, static_cast<long>(t * 2000));
    CHECK(std::abs(solve_alpha(t, a0, p, d) - ref) < 1e-9);
    const auto g = gaussian_flow(GaussianState::from_u_alpha(0.2, a0), t, p, d);
    CHECK(std::abs(g.alpha() - ref) < 1e-9);
    CHECK(g.u() == solve_u(t, 0.2, p));
  }
}

TEST_CASE("limit-cycle state repeats every drive period") {
  const LindbladParams p{1.1, 0.6, 0.4};
  const auto d = Drive::cosine(1.4, 1.095445);
  const double T = 2 * std::acos(-1.0) / 1.095445;
  for (double t : {0.0, 0.7, 3.1}) {
    const auto a = limit_cycle_state(t, p, d);
    const auto b = limit_cycle_state(t + T, p, d);
    CHECK(a.u() == doctest::Approx(2.0 / 3.0));
    CHECK(std::abs(a.alpha() - b.alpha()) < 1e-11);
  }
}

TEST_CASE("entropy of the geometric distribution") {
  CHECK(entropy(0.0) == 0.0);
  for (double u : {1e-6, 0.1, 0.5, 2.0 / 3.0, 0.99})
    CHECK(entropy(u) == doctest::Approx(oracle::geometric_entropy(u)).epsilon(1e-11));
  const auto rho = geometric_state(2.0 / 3.0, FockDim(200));
  CHECK(von_neumann_entropy(hermitized_eigenvalues(rho.matrix())) ==
        doctest::Approx(entropy(2.0 / 3.0)).epsilon(1e-10));
  CHECK(entropy_infinity({1.0, 0.6, 0.4}) == doctest::Approx(1.9095425048844383).epsilon(1e-14));
  CHECK(entropy_infinity({1.0, 0.6, 0.0}) == doctest::Approx(0.0));
  CHECK_THROWS_AS(entropy(1.0), InvalidParameters);
}
