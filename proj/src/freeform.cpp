#include "lindosc/freeform.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "lindosc/errors.hpp"
#include "lindosc/lindblad.hpp"

namespace lindosc {

EFG efg(double t, const LindbladParams& params) {
  params.validate();
  if (!(t >= 0.0) || !std::isfinite(t)) {
    throw InvalidParameters("efg: t must be finite and >= 0");
  }
  const double g = params.gamma();
  const double gp = params.gamma_prime();
  const double x = g * t;
  // tanh forms stay finite for any t; sinh/cosh would overflow past g t ~ 710.
  const double th = std::tanh(x);
  const double den = g + gp * th;
  EFG r;
  r.E = params.mu * th / den;
  r.G = params.nu * th / den;
  const double log_cosh = x + std::log1p(std::exp(-2.0 * x)) - std::numbers::ln2;
  r.log_F = log_cosh + std::log1p(gp / g * th);
  r.F = std::exp(r.log_F);
  return r;
}

namespace {

// Keeps summing while terms are large or still growing; PSD terms make the
// trace a faithful size measure.
bool converged(double tr, double prev, double tol) { return tr == 0.0 || (tr < tol && tr <= prev); }

}  // namespace

ComplexMatrix fujii_sum(const ComplexMatrix& rho0, double t, const LindbladParams& params,
                        double term_tol) {
  if (rho0.rows() != rho0.cols() || rho0.rows() < 2) {
    throw DimensionMismatch("fujii_sum: expected a square matrix of size >= 2");
  }
  const EFG f = efg(t, params);
  const Eigen::Index d = rho0.rows();
  std::vector<double> sq(static_cast<std::size_t>(d) + 1);
  for (std::size_t j = 0; j < sq.size(); ++j) sq[j] = std::sqrt(static_cast<double>(j));

  // X = sum_k E^k/k! a^k rho0 a^{+k}; (a T a^+)_{mn} = sqrt((m+1)(n+1)) T_{m+1,n+1}.
  ComplexMatrix term = rho0;
  ComplexMatrix x = rho0;
  double prev = term.trace().real();
  for (Eigen::Index k = 1; k < d; ++k) {
    const double ck = f.E / static_cast<double>(k);
    for (Eigen::Index n = 0; n < d; ++n) {
      for (Eigen::Index m = 0; m < d; ++m) {
        term(m, n) = (m + 1 < d && n + 1 < d) ? ck * sq[m + 1] * sq[n + 1] * term(m + 1, n + 1)
                                              : Complex{};
      }
    }
    x += term;
    const double tr = term.trace().real();
    if (converged(tr, prev, term_tol)) break;
    prev = tr;
  }

  // e^{-(i w t + ln F) n} X e^{(i w t - ln F) n}
  const double wt = params.omega * t;
  for (Eigen::Index n = 0; n < d; ++n) {
    for (Eigen::Index m = 0; m < d; ++m) {
      x(m, n) *= std::polar(std::exp(-static_cast<double>(m + n) * f.log_F),
                            -wt * static_cast<double>(m - n));
    }
  }

  // sum_j G^j/j! a^{+j} Y a^j; (a^+ W a)_{mn} = sqrt(m n) W_{m-1,n-1}. Updated from the
  // bottom-right corner so each entry reads its unshifted neighbour.
  term = x;
  ComplexMatrix out = x;
  prev = term.trace().real();
  for (Eigen::Index j = 1; j < d; ++j) {
    const double cj = f.G / static_cast<double>(j);
    for (Eigen::Index n = d - 1; n >= 0; --n) {
      for (Eigen::Index m = d - 1; m >= 0; --m) {
        term(m, n) = (m > 0 && n > 0) ? cj * sq[m] * sq[n] * term(m - 1, n - 1) : Complex{};
      }
    }
    out += term;
    const double tr = term.trace().real();
    if (converged(tr, prev, term_tol)) break;
    prev = tr;
  }
  // e^{g t}/F = 1 - G
  out *= 1.0 - f.G;
  return out;
}

DensityMatrix fujii_density(const DensityMatrix& rho0, double t, const LindbladParams& params,
                            const FujiiOptions& opts) {
  ComplexMatrix raw = fujii_sum(rho0.matrix(), t, params, opts.term_tol);
  const double deficit = 1.0 - raw.trace().real();
  if (deficit > opts.max_trace_deficit) {
    const std::size_t need = 2 * rho0.dim().size();
    std::ostringstream os;
    os << "truncation overflow: force-free solution loses " << deficit
       << " of its weight above the truncation; requires a larger dim (try dim >= " << need
       << ", have " << rho0.dim().size() << ")";
    throw TruncationOverflow(os.str(), need);
  }
  if (opts.renormalize) {
    return DensityMatrix::normalized(std::move(raw));
  }
  DensityTolerances tol;
  tol.trace = opts.max_trace_deficit;
  return DensityMatrix::from_matrix(std::move(raw), tol);
}

DensityMatrix thermal_from_ground(double t, const LindbladParams& params, FockDim dim) {
  const EFG f = efg(t, params);
  if (params.nu == 0.0 || f.G == 0.0) return DensityMatrix::fock(0, dim);
  return geometric_state(f.G, dim);
}

GaussianState coherent_free_evolution(Complex alpha0, double t, const LindbladParams& params) {
  const EFG f = efg(t, params);
  const Complex a = alpha0 * std::exp(Complex(-params.gamma() * t, -params.omega * t));
  return GaussianState::from_u_alpha(f.G, a);
}

}  // namespace lindosc
