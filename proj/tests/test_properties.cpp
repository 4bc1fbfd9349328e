// Randomized invariants. Each generator draws from a fixed seed so failures
// reproduce; the case index is reported through doctest's CAPTURE.

#include <doctest.h>

#include <cmath>
#include <random>

#include "lindosc/freeform.hpp"
#include "lindosc/gaussian.hpp"
#include "lindosc/lindblad.hpp"
#include "lindosc/nonhermitian.hpp"
#include "lindosc/observables.hpp"
#include "oracles.hpp"

using namespace lindosc;

namespace {

struct Gen {
  std::mt19937_64 rng;
  explicit Gen(std::uint64_t seed) : rng(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

  // mu > nu >= 0 with gamma in [g_lo, g_hi]; nu may be exactly 0.
  LindbladParams params(double g_lo = 0.05, double g_hi = 0.5, double nu_hi = 0.5) {
    const double omega = uniform(0.5, 2.0);
    const double gamma = uniform(g_lo, g_hi);
    const double nu = uniform(0.0, 1.0) < 0.2 ? 0.0 : uniform(0.0, nu_hi);
    return {omega, nu + 2.0 * gamma, nu};
  }

  Drive cosine() { return Drive::cosine(uniform(0.0, 1.5), uniform(0.1, 2.5)); }

  Drive any_drive() {
    const double pick = uniform(0.0, 3.0);
    if (pick < 1.0) return Drive::none();
    if (pick < 2.0) return cosine();
    return Drive::fourier(uniform(0.2, 2.0), {{1, {uniform(-0.5, 0.5), uniform(-0.5, 0.5)}},
                                              {-2, {uniform(-0.5, 0.5), uniform(-0.5, 0.5)}}});
  }

  Complex disk(double r) {
    const double rho = r * std::sqrt(uniform(0.0, 1.0));
    return std::polar(rho, uniform(0.0, 2.0 * std::acos(-1.0)));
  }

  GaussianState gaussian(double u_hi = 0.6, double r = 1.2) {
    return GaussianState::from_u_alpha(uniform(0.0, u_hi), disk(r));
  }
};

}  // namespace

TEST_CASE("generator preserves trace and hermiticity for random models") {
  Gen gen(101);
  for (int i = 0; i < 40; ++i) {
    CAPTURE(i);
    const auto p = gen.params();
    const auto d = gen.any_drive();
    const ComplexMatrix rho = oracle::random_density(gen.rng, 12, 12);
    const double t = gen.uniform(0.0, 10.0);
    const ComplexMatrix L = lindblad_rhs(rho, t, p, d);
    CHECK(std::abs(L.trace()) < 1e-12);
    CHECK(oracle::max_abs(L - L.adjoint()) < 1e-12);
  }
}

TEST_CASE("force-free Gaussian flow composes") {
  Gen gen(102);
  for (int i = 0; i < 100; ++i) {
    CAPTURE(i);
    const auto p = gen.params();
    const auto g = gen.gaussian();
    const double s = gen.uniform(0.0, 5.0), t = gen.uniform(0.0, 5.0);
    const auto once = gaussian_flow(g, s + t, p, Drive::none());
    const auto twice = gaussian_flow(gaussian_flow(g, s, p, Drive::none()), t, p, Drive::none());
    CHECK(once.u() == doctest::Approx(twice.u()).epsilon(1e-12));
    CHECK(std::abs(once.alpha() - twice.alpha()) < 1e-12);
  }
}

TEST_CASE("Gaussian flow and the closed-form sum agree for displaced thermal inputs") {
  Gen gen(103);
  const FockDim dim(48);
  for (int i = 0; i < 12; ++i) {
    CAPTURE(i);
    const auto p = gen.params(0.05, 0.5, 0.15);
    const auto g = gen.gaussian(0.3, 1.0);
    const double t = gen.uniform(0.1, 3.0);
    const auto via_flow = materialize(gaussian_flow(g, t, p, Drive::none()), dim);
    const auto via_sum = fujii_density(materialize(g, dim), t, p);
    CHECK(trace_distance(via_flow, via_sum) < 1e-8);
  }
}

TEST_CASE("closed-form sum composes over time") {
  Gen gen(104);
  const FockDim dim(40);
  for (int i = 0; i < 10; ++i) {
    CAPTURE(i);
    const auto p = gen.params(0.05, 0.5, 0.05);
    const auto rho = DensityMatrix::normalized(oracle::random_density(gen.rng, 40, 3));
    const double s = gen.uniform(0.1, 2.0), t = gen.uniform(0.1, 2.0);
    const auto once = fujii_density(rho, s + t, p);
    const auto twice = fujii_density(fujii_density(rho, s, p), t, p);
    CHECK(trace_distance(once, twice) < 1e-9);
  }
}

TEST_CASE("u relaxes monotonically to nu/mu and entropy follows") {
  Gen gen(105);
  for (int i = 0; i < 60; ++i) {
    CAPTURE(i);
    const auto p = gen.params();
    const double u0 = gen.uniform(0.0, 0.99);
    const double target = p.nu / p.mu;
    double prev_u = u0, prev_s = entropy(u0);
    for (int k = 1; k <= 200; ++k) {
      const double u = solve_u(0.1 * k, u0, p);
      const double s = entropy(u);
      REQUIRE(u >= 0.0);
      REQUIRE(u < 1.0);
      // Never overshoots the fixed point and never moves away from it.
      CHECK((u - target) * (u0 - target) >= 0.0);
      CHECK(std::abs(u - target) <= std::abs(prev_u - target) + 1e-15);
      if (u0 < target) CHECK(s >= prev_s - 1e-14);
      if (u0 > target) CHECK(s <= prev_s + 1e-14);
      prev_u = u;
      prev_s = s;
    }
  }
}

TEST_CASE("the drive never changes the width") {
  Gen gen(106);
  for (int i = 0; i < 50; ++i) {
    CAPTURE(i);
    const auto p = gen.params();
    const auto g = gen.gaussian();
    const auto d = gen.any_drive();
    const double t = gen.uniform(0.0, 20.0);
    CHECK(gaussian_flow(g, t, p, d).u() == gaussian_flow(g, t, p, Drive::none()).u());
  }
}

TEST_CASE("limit-cycle identities for random models") {
  Gen gen(107);
  for (int i = 0; i < 60; ++i) {
    CAPTURE(i);
    const auto p = gen.params();
    const auto d = gen.cosine();
    const double nbar = limit_cycle_nbar(p, d);
    CHECK(nbar == doctest::Approx(limit_cycle_nbar_from_amplitude(p, d, 128)).epsilon(1e-12));
    const auto lc = quantum_lc(p, d);
    CHECK(lc.phi_q <= 0.0);
    CHECK(lc.phi_q > -std::acos(-1.0));
    const double t = gen.uniform(0.0, 30.0);
    CHECK(lc.ellipse_residual(t, p, d) < 1e-9 * std::max(1.0, lc.A_q * lc.A_q));
    // Husimi peak of the limit-cycle state is b = 2 gamma / mu.
    const auto g = limit_cycle_state(t, p, d);
    CHECK(husimi_value(g.alpha(), g) == doctest::Approx(2.0 * p.gamma() / p.mu).epsilon(1e-14));
  }
}

TEST_CASE("complex-frequency amplitude equals the mean-value solution") {
  Gen gen(108);
  for (int i = 0; i < 60; ++i) {
    CAPTURE(i);
    const NHParams nh{gen.uniform(0.5, 2.0), gen.uniform(0.02, 0.5), gen.uniform(0.0, 1.0),
                      gen.uniform(0.1, 2.5)};
    const Complex a0 = gen.disk(1.5);
    const double t = gen.uniform(0.0, 20.0);
    const auto e = nh_expectations(t, a0, nh);
    CHECK(std::abs(e.a - mean_a(t, a0, nh.lindblad(), nh.drive())) <
          1e-12 * std::max(1.0, std::abs(e.a)));
    CHECK(e.n == doctest::Approx(std::norm(e.a)));
  }
}

TEST_CASE("materialized densities are valid states") {
  Gen gen(109);
  for (int i = 0; i < 30; ++i) {
    CAPTURE(i);
    const auto g = gen.gaussian(0.7, 1.5);
    const auto rho = materialize(g, FockDim(80));
    const auto diag = density_diagnostics(rho);
    CHECK(diag.trace_err < 1e-12);
    CHECK(diag.herm_err == 0.0);
    CHECK(diag.min_eig > -1e-12);
    CHECK(purity(rho) == doctest::Approx((1.0 - g.u()) / (1.0 + g.u())).epsilon(1e-8));
  }
}
