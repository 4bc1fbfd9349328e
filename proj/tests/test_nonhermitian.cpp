#include <doctest.h>

#include <cmath>

#include "lindosc/errors.hpp"
#include "lindosc/nonhermitian.hpp"
#include "oracles.hpp"

using namespace lindosc;

namespace {

const Complex I(0.0, 1.0);

// A, B, C stacked as a 3-vector.
Eigen::VectorXcd abc_rk4(double t, const NHParams& p) {
  const Complex w = p.omega_tilde();
  std::function<Eigen::VectorXcd(double, const Eigen::VectorXcd&)> f =
      [&](double s, const Eigen::VectorXcd& y) {
        const double fs = p.f0 * std::cos(p.Omega * s);
        Eigen::VectorXcd dy(3);
        dy(0) = I * fs * y(2);
        dy(1) = I * fs * std::exp(-I * w * s);
        dy(2) = -I * (w * y(2) - fs);
        return dy;
      };
  return oracle::rk4<Eigen::VectorXcd>(f, Eigen::VectorXcd::Zero(3), 0.0, t,
                                       static_cast<long>(t * 4000) + 1);
}

// i psi' = H psi with H = w~(n + 1/2) - f (a^+ + a), unnormalized.
Eigen::VectorXcd schroedinger(double t, Complex a0, const NHParams& p, int d) {
  const Eigen::MatrixXcd a = oracle::annihilation(d);
  const Eigen::MatrixXcd base =
      p.omega_tilde() * (oracle::number(d) + 0.5 * Eigen::MatrixXcd::Identity(d, d));
  const Eigen::MatrixXcd x = a + a.adjoint();
  std::function<Eigen::VectorXcd(double, const Eigen::VectorXcd&)> f =
      [&](double s, const Eigen::VectorXcd& psi) -> Eigen::VectorXcd {
    return -I * (base * psi - p.f0 * std::cos(p.Omega * s) * (x * psi));
  };
  return oracle::rk4<Eigen::VectorXcd>(f, oracle::coherent(a0, d), 0.0, t,
                                       static_cast<long>(t * 2000) + 1);
}

}  // namespace

TEST_CASE("coefficients vanish at the origin and match a reference point") {
  const NHParams p{1.0, 0.13, 0.7, 0.83};
  const auto z = abc(0.0, p);
  CHECK(std::abs(z.A) < 1e-15);
  CHECK(std::abs(z.B) < 1e-15);
  CHECK(std::abs(z.C) < 1e-15);
  const auto r = abc(1.7, p);
  CHECK(std::abs(r.A - Complex(-0.27035833281209654, 0.14055965693805855)) < 1e-13);
  CHECK(std::abs(r.B - Complex(0.41625794489702883, 0.555862250709126)) < 1e-13);
  CHECK(std::abs(r.C - Complex(0.5577180879010565, 0.35368150309815194)) < 1e-13);
}

TEST_CASE("coefficients solve their differential equations") {
  for (const NHParams& p : {NHParams{1.0, 0.13, 0.7, 0.83}, NHParams{1.1, 0.1, 0.3, 1.095445},
                            NHParams{0.8, 0.4, 1.2, 2.1}}) {
    for (double t : {0.4, 3.0, 12.0}) {
      const auto ref = abc_rk4(t, p);
      const auto got = abc(t, p);
      CHECK(std::abs(got.A - ref(0)) < 1e-10);
      CHECK(std::abs(got.B - ref(1)) < 1e-10);
      CHECK(std::abs(got.C - ref(2)) < 1e-10);
    }
  }
}

TEST_CASE("coherent wavefunction under the complex-frequency Hamiltonian") {
  const int d = 48;
  for (const NHParams& p : {NHParams{1.1, 0.1, 0.3, 1.095445}, NHParams{1.1, 0.1, 0.0, 0.0}}) {
    const Complex a0(1.0, 0.5);
    for (double t : {0.5, 4.0}) {
      const Eigen::VectorXcd psi = schroedinger(t, a0, p, d);
      const double norm = psi.squaredNorm();
      const Complex mean_a = psi.dot(oracle::annihilation(d) * psi) / norm;
      const double mean_n = psi.dot(oracle::number(d) * psi).real() / norm;
      const auto e = nh_expectations(t, a0, p);
      CHECK(std::abs(e.a - mean_a) < 1e-9);
      CHECK(e.n == doctest::Approx(mean_n).epsilon(1e-9));
      CHECK(nh_norm_prefactor(t, a0, p) == doctest::Approx(norm).epsilon(1e-9));
      CHECK(nh_husimi(e.a, t, a0, p) == doctest::Approx(1.0));
    }
  }
}

TEST_CASE("norm routes agree without drive") {
  const NHParams p{1.1, 0.1, 0.0, 0.0};
  for (double t : {0.0, 2.0, 9.0}) {
    const auto nn = nh_norm(t, {1.0, 0.5}, p, FockDim(64));
    REQUIRE(nn.series.has_value());
    CHECK(*nn.series == doctest::Approx(nn.prefactor).epsilon(1e-12));
  }
  const NHParams driven{1.1, 0.1, 0.3, 1.0};
  CHECK_FALSE(nh_norm(1.0, {1.0, 0.0}, driven, FockDim(64)).series.has_value());
  CHECK_THROWS_AS(nh_norm_series(1.0, {1.0, 0.0}, driven, FockDim(64)), InvalidParameters);
  CHECK_THROWS_AS(nh_norm(1.0, {3.0, 0.0}, p, FockDim(8)), TruncationOverflow);
}

TEST_CASE("parameter checks and the equivalent Lindblad model") {
  CHECK_THROWS_AS(NHParams({1.0, 0.1, 0.5, 0.0}).validate(), InvalidParameters);
  CHECK_THROWS_AS(NHParams({1.0, 0.0, 0.0, 0.0}).validate(), InvalidParameters);
  CHECK_THROWS_AS(NHParams({-1.0, 0.1, 0.0, 0.0}).validate(), InvalidParameters);
  const NHParams p{1.1, 0.1, 0.3, 1.0};
  CHECK(p.lindblad().mu == doctest::Approx(0.2));
  CHECK(p.lindblad().nu == 0.0);
  CHECK(p.drive().f0() == 0.3);
  CHECK(NHParams{}.drive().is_zero());
}
