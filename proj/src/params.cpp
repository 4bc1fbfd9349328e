#include "lindosc/params.hpp"

#include <cmath>
#include <sstream>

#include "lindosc/errors.hpp"

namespace lindosc {

void LindbladParams::validate() const {
  std::ostringstream os;
  if (!std::isfinite(omega) || !(omega > 0.0)) {
    os << "omega must be > 0 (got " << omega << ")";
  } else if (!std::isfinite(nu) || nu < 0.0) {
    os << "nu must be >= 0 (got " << nu << ")";
  } else if (!std::isfinite(mu) || !(mu > nu)) {
    os << "invariant mu > nu >= 0 violated (mu = " << mu << ", nu = " << nu << ")";
  } else {
    return;
  }
  throw InvalidParameters(os.str());
}

Drive Drive::none() { return Drive{}; }

Drive Drive::cosine(double f0, double Omega) {
  if (!std::isfinite(f0) || !std::isfinite(Omega) || Omega < 0.0) {
    throw InvalidParameters("cosine drive needs finite f0 and Omega >= 0");
  }
  Drive d;
  d.kind_ = Kind::cosine;
  d.f0_ = f0;
  d.Omega_ = Omega;
  return d;
}

Drive Drive::fourier(double Omega, std::vector<Harmonic> harmonics) {
  if (!std::isfinite(Omega) || !(Omega > 0.0)) {
    throw InvalidParameters("fourier drive requires Omega > 0");
  }
  for (const auto& h : harmonics) {
    if (!std::isfinite(h.c.real()) || !std::isfinite(h.c.imag())) {
      throw InvalidParameters("fourier coefficient is not finite");
    }
  }
  Drive d;
  d.kind_ = Kind::fourier;
  d.Omega_ = Omega;
  d.harmonics_ = std::move(harmonics);
  return d;
}

bool Drive::is_zero() const noexcept {
  switch (kind_) {
    case Kind::none:
      return true;
    case Kind::cosine:
      return f0_ == 0.0;
    case Kind::fourier:
      for (const auto& h : harmonics_) {
        if (h.c != Complex{}) return false;
      }
      return true;
  }
  return true;
}

Complex Drive::operator()(double t) const noexcept {
  switch (kind_) {
    case Kind::none:
      return {};
    case Kind::cosine:
      return {f0_ * std::cos(Omega_ * t), 0.0};
    case Kind::fourier: {
      Complex f{};
      for (const auto& h : harmonics_) {
        f += h.c * std::polar(1.0, h.k * Omega_ * t);
      }
      return f;
    }
  }
  return {};
}

double Drive::real_force_amplitude(double omega) const noexcept {
  return std::sqrt(2.0 * omega) * f0_;
}

std::vector<Drive::Harmonic> Drive::as_harmonics() const {
  switch (kind_) {
    case Kind::none:
      return {};
    case Kind::cosine:
      return {{1, {0.5 * f0_, 0.0}}, {-1, {0.5 * f0_, 0.0}}};
    case Kind::fourier:
      return harmonics_;
  }
  return {};
}

std::string Drive::describe() const {
  std::ostringstream os;
  os.precision(17);
  switch (kind_) {
    case Kind::none:
      os << "none";
      break;
    case Kind::cosine:
      os << "cosine f0=" << f0_ << " Omega=" << Omega_;
      break;
    case Kind::fourier:
      os << "fourier Omega=" << Omega_;
      for (const auto& h : harmonics_) {
        os << " c[" << h.k << "]=(" << h.c.real() << "," << h.c.imag() << ")";
      }
      break;
  }
  return os.str();
}

Complex forced_response(double t, double omega, double gamma, const Drive& drive) {
  const Complex decay = std::exp(Complex(-gamma * t, -omega * t));
  switch (drive.kind()) {
    case Drive::Kind::none:
      return {};
    case Drive::Kind::cosine: {
      const double W = drive.Omega();
      const Complex plus(omega + W, -gamma);
      const Complex minus(omega - W, -gamma);
      return 0.5 * drive.f0() *
             ((std::polar(1.0, W * t) - decay) / plus + (std::polar(1.0, -W * t) - decay) / minus);
    }
    case Drive::Kind::fourier: {
      Complex sum{};
      for (const auto& h : drive.harmonics()) {
        const double kW = h.k * drive.Omega();
        sum += std::conj(h.c) * (std::polar(1.0, -kW * t) - decay) / Complex(omega - kW, -gamma);
      }
      return sum;
    }
  }
  return {};
}

Complex forced_response_limit(double t, double omega, double gamma, const Drive& drive) {
  switch (drive.kind()) {
    case Drive::Kind::none:
      return {};
    case Drive::Kind::cosine: {
      const double W = drive.Omega();
      return 0.5 * drive.f0() *
             (std::polar(1.0, W * t) / Complex(omega + W, -gamma) +
              std::polar(1.0, -W * t) / Complex(omega - W, -gamma));
    }
    case Drive::Kind::fourier: {
      Complex sum{};
      for (const auto& h : drive.harmonics()) {
        const double kW = h.k * drive.Omega();
        sum += std::conj(h.c) * std::polar(1.0, -kW * t) / Complex(omega - kW, -gamma);
      }
      return sum;
    }
  }
  return {};
}

}  // namespace lindosc
