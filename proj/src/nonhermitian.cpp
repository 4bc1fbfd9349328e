#include "lindosc/nonhermitian.hpp"

#include <cmath>
#include <sstream>

#include "lindosc/errors.hpp"

namespace lindosc {

namespace {

constexpr Complex I{0.0, 1.0};

Complex cexp(Complex z) { return std::exp(z); }

}  // namespace

Drive NHParams::drive() const { return f0 == 0.0 ? Drive::none() : Drive::cosine(f0, Omega); }

void NHParams::validate() const {
  std::ostringstream os;
  if (!std::isfinite(omega) || !(omega > 0.0)) {
    os << "non-Hermitian model needs omega > 0 (got " << omega << ")";
  } else if (!std::isfinite(gamma) || !(gamma > 0.0)) {
    os << "non-Hermitian model needs gamma > 0 (got " << gamma << ")";
  } else if (!std::isfinite(f0) || !std::isfinite(Omega) || Omega < 0.0) {
    os << "non-Hermitian drive needs finite f0 and Omega >= 0";
  } else if (f0 != 0.0 && !(Omega > 0.0)) {
    os << "non-Hermitian drive with f0 != 0 needs Omega > 0";
  } else {
    return;
  }
  throw InvalidParameters(os.str());
}

NHCoefficients abc(double t, const NHParams& p) {
  p.validate();
  if (p.f0 == 0.0) return {};
  const Complex w = p.omega_tilde();
  const double W = p.Omega;
  const Complex d = w * w - W * W;
  const Complex ep = std::polar(1.0, W * t);
  const Complex em = std::conj(ep);
  const Complex ew = cexp(-I * w * t);
  // e^{-i(w~ -+ W) t}
  const Complex e_lo = ew * ep;
  const Complex e_hi = ew * em;
  const Complex bracket = (w + W) * e_lo + (w - W) * e_hi - 2.0 * w;

  NHCoefficients r;
  r.C = p.f0 / (2.0 * d) * ((w - W) * ep + (w + W) * em - 2.0 * w * ew);
  r.B = -p.f0 / (2.0 * d) * bracket;
  r.A = p.f0 * p.f0 / (4.0 * d) *
        (1.0 + 2.0 * I * w * t + (w - W) / (2.0 * W) * ep * ep - (w + W) / (2.0 * W) * em * em +
         2.0 * w / d * bracket);
  return r;
}

NHExpectations nh_expectations(double t, Complex alpha0, const NHParams& p) {
  if (!(t >= 0.0) || !std::isfinite(t)) {
    throw InvalidParameters("nh_expectations: t must be finite and >= 0");
  }
  const NHCoefficients c = abc(t, p);
  NHExpectations e;
  e.a = c.C + alpha0 * cexp(-I * p.omega_tilde() * t);
  e.n = std::norm(e.a);
  return e;
}

double nh_norm_prefactor(double t, Complex alpha0, const NHParams& p) {
  const NHCoefficients c = abc(t, p);
  const Complex a = c.C + alpha0 * cexp(-I * p.omega_tilde() * t);
  return std::exp(-p.gamma * t + 2.0 * c.A.real() + 2.0 * (c.B * alpha0).real() -
                  std::norm(alpha0) + std::norm(a));
}

double nh_norm_series(double t, Complex alpha0, const NHParams& p, FockDim dim) {
  p.validate();
  if (p.f0 != 0.0) {
    throw InvalidParameters("nh_norm_series: the Fock series applies only without drive");
  }
  const StateVector psi = coherent_state(alpha0, dim);
  double s = 0.0;
  for (Eigen::Index n = 0; n < psi.size(); ++n) {
    s += std::norm(psi(n)) * std::exp(-2.0 * p.gamma * (static_cast<double>(n) + 0.5) * t);
  }
  return s;
}

NHNorm nh_norm(double t, Complex alpha0, const NHParams& p, FockDim dim) {
  if (!(t >= 0.0) || !std::isfinite(t)) {
    throw InvalidParameters("nh_norm: t must be finite and >= 0");
  }
  check_truncation(alpha0, dim);
  check_truncation(nh_expectations(t, alpha0, p).a, dim);
  NHNorm r;
  r.prefactor = nh_norm_prefactor(t, alpha0, p);
  if (p.f0 == 0.0) r.series = nh_norm_series(t, alpha0, p, dim);
  return r;
}

double nh_husimi(Complex alpha_pt, double t, Complex alpha0, const NHParams& p) {
  return std::exp(-std::norm(alpha_pt - nh_expectations(t, alpha0, p).a));
}

}  // namespace lindosc
