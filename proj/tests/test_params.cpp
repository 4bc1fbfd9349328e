#include <doctest.h>

#include <cmath>
#include <string>

#include "lindosc/errors.hpp"
#include "lindosc/params.hpp"
#include "oracles.hpp"

using namespace lindosc;

namespace {

// da/dt = -(i w + g) a + i f^*(t), a(0) = 0, by fine-step RK4.
Complex forced_rk4(double t, double omega, double gamma, const std::function<Complex(double)>& f) {
  std::function<Complex(double, const Complex&)> rhs = [&](double s, const Complex& a) {
    return -Complex(gamma, omega) * a + Complex(0.0, 1.0) * std::conj(f(s));
  };
  return oracle::rk4<Complex>(rhs, Complex{}, 0.0, t, static_cast<long>(std::ceil(t / 1e-3)));
}

}  // namespace

TEST_CASE("parameter invariants") {
  CHECK_NOTHROW(LindbladParams{1.0, 0.6, 0.4}.validate());
  CHECK_NOTHROW(LindbladParams{1.0, 0.2, 0.0}.validate());
  try {
    LindbladParams{1.0, 0.4, 0.4}.validate();
    FAIL("expected InvalidParameters");
  } catch (const InvalidParameters& e) {
    CHECK(std::string(e.what()).find("mu > nu") != std::string::npos);
  }
  CHECK_THROWS_AS(LindbladParams({1.0, 0.3, 0.5}).validate(), InvalidParameters);
  CHECK_THROWS_AS(LindbladParams({1.0, 0.3, -0.1}).validate(), InvalidParameters);
  CHECK_THROWS_AS(LindbladParams({0.0, 0.3, 0.1}).validate(), InvalidParameters);
  CHECK_THROWS_AS(LindbladParams({1.0, std::nan(""), 0.1}).validate(), InvalidParameters);

  const LindbladParams p{1.1, 0.6, 0.4};
  CHECK(p.gamma() == doctest::Approx(0.1));
  CHECK(p.gamma_prime() == doctest::Approx(0.5));
  CHECK(p.nbar() == doctest::Approx(2.0));
}

TEST_CASE("drive evaluation") {
  const auto c = Drive::cosine(1.4, 0.7);
  CHECK(c.kind() == Drive::Kind::cosine);
  CHECK(std::abs(c(2.0) - Complex(1.4 * std::cos(1.4), 0.0)) < 1e-15);
  CHECK(c.real_force_amplitude(1.1) == doctest::Approx(std::sqrt(2.2) * 1.4));
  const auto h = c.as_harmonics();
  REQUIRE(h.size() == 2);
  CHECK(std::abs(h[0].c - Complex(0.7, 0.0)) < 1e-15);
  CHECK(std::abs(h[1].c - Complex(0.7, 0.0)) < 1e-15);

  CHECK(Drive::none().is_zero());
  CHECK(Drive::cosine(0.0, 1.0).is_zero());
  CHECK(Drive::none()(3.0) == Complex{});

  const auto f = Drive::fourier(0.5, {{1, {0.2, 0.1}}, {-2, {0.0, -0.3}}});
  const double t = 1.3;
  const Complex ref = Complex(0.2, 0.1) * std::exp(Complex(0.0, 0.5 * t)) +
                      Complex(0.0, -0.3) * std::exp(Complex(0.0, -1.0 * t));
  CHECK(std::abs(f(t) - ref) < 1e-15);
  CHECK_THROWS_AS(Drive::fourier(0.0, {{1, {1.0, 0.0}}}), InvalidParameters);
}

TEST_CASE("forced response matches direct integration") {
  const double omega = 1.1, gamma = 0.1;
  SUBCASE("cosine, off resonance and on resonance") {
    for (double W : {0.4, 1.095445, 1.1, 2.3}) {
      const auto d = Drive::cosine(1.4, W);
      for (double t : {0.3, 2.0, 7.5}) {
        const Complex ref = forced_rk4(t, omega, gamma, [&](double s) {
          return Complex(1.4 * std::cos(W * s), 0.0);
        });
        CHECK(std::abs(forced_response(t, omega, gamma, d) - ref) < 1e-9);
      }
    }
  }
  SUBCASE("fourier with unequal positive and negative harmonics") {
    const auto d = Drive::fourier(0.8, {{1, {0.3, 0.2}}, {-1, {-0.1, 0.05}}, {3, {0.0, 0.4}}});
    for (double t : {0.5, 3.0, 9.0}) {
      const Complex ref = forced_rk4(t, omega, gamma, [&](double s) {
        return Complex(0.3, 0.2) * std::exp(Complex(0.0, 0.8 * s)) +
               Complex(-0.1, 0.05) * std::exp(Complex(0.0, -0.8 * s)) +
               Complex(0.0, 0.4) * std::exp(Complex(0.0, 2.4 * s));
      });
      CHECK(std::abs(forced_response(t, omega, gamma, d) - ref) < 1e-9);
    }
  }
  SUBCASE("zero drive") {
    CHECK(forced_response(4.0, omega, gamma, Drive::none()) == Complex{});
  }
}

TEST_CASE("forced response relaxes onto its limit") {
  // F(t) = F_lc(t) - F_lc(0) e^{-(i w + g) t}, since F(0) = 0.
  const double omega = 1.1, gamma = 0.1;
  for (const auto& d : {Drive::cosine(1.4, 1.095445),
                        Drive::fourier(0.6, {{2, {0.1, 0.3}}, {-1, {0.2, 0.0}}})}) {
    for (double t : {0.0, 1.0, 12.0, 80.0}) {
      const Complex lhs = forced_response(t, omega, gamma, d);
      const Complex rhs = forced_response_limit(t, omega, gamma, d) -
                          forced_response_limit(0.0, omega, gamma, d) *
                              std::exp(-Complex(gamma, omega) * t);
      CHECK(std::abs(lhs - rhs) < 1e-12);
    }
  }
}
