#include "lindosc/lindblad.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "lindosc/errors.hpp"

namespace lindosc {

namespace {

void require_square(const ComplexMatrix& rho) {
  if (rho.rows() != rho.cols() || rho.rows() < 2) {
    std::ostringstream os;
    os << "lindblad_rhs: expected a square matrix of size >= 2, got " << rho.rows() << "x"
       << rho.cols();
    throw DimensionMismatch(os.str());
  }
}

std::vector<double> sqrt_table(Eigen::Index d) {
  std::vector<double> s(static_cast<std::size_t>(d) + 1);
  for (std::size_t j = 0; j < s.size(); ++j) s[j] = std::sqrt(static_cast<double>(j));
  return s;
}

}  // namespace

void lindblad_rhs_into(const ComplexMatrix& rho, double t, const LindbladParams& params,
                       const Drive& drive, ComplexMatrix& out) {
  require_square(rho);
  const Eigen::Index d = rho.rows();
  out.resize(d, d);

  const double w = params.omega;
  const double mu = params.mu;
  const double nu = params.nu;
  const Complex f = drive(t);
  const Complex fc = std::conj(f);
  const Complex I(0.0, 1.0);
  thread_local std::vector<double> sq;
  if (static_cast<Eigen::Index>(sq.size()) != d + 1) sq = sqrt_table(d);
  // a a^+ in the truncated basis: diag(1, 2, ..., d-1, 0).
  auto aadag = [d](Eigen::Index m) { return m + 1 < d ? static_cast<double>(m + 1) : 0.0; };

  for (Eigen::Index n = 0; n < d; ++n) {
    const double kn = aadag(n);
    for (Eigen::Index m = 0; m < d; ++m) {
      const Complex r = rho(m, n);
      // [H, rho]_{mn}
      Complex comm = w * static_cast<double>(m - n) * r;
      Complex adag_rho = m > 0 ? sq[m] * rho(m - 1, n) : Complex{};
      Complex rho_adag = n + 1 < d ? sq[n + 1] * rho(m, n + 1) : Complex{};
      Complex a_rho = m + 1 < d ? sq[m + 1] * rho(m + 1, n) : Complex{};
      Complex rho_a = n > 0 ? sq[n] * rho(m, n - 1) : Complex{};
      comm -= fc * (adag_rho - rho_adag) + f * (a_rho - rho_a);

      Complex loss = -0.5 * static_cast<double>(m + n) * r;
      if (m + 1 < d && n + 1 < d) loss += sq[m + 1] * sq[n + 1] * rho(m + 1, n + 1);

      Complex pump = -0.5 * (aadag(m) + kn) * r;
      if (m > 0 && n > 0) pump += sq[m] * sq[n] * rho(m - 1, n - 1);

      out(m, n) = -I * comm + mu * loss + nu * pump;
    }
  }
}

ComplexMatrix lindblad_rhs(const ComplexMatrix& rho, double t, const LindbladParams& params,
                           const Drive& drive) {
  ComplexMatrix out;
  lindblad_rhs_into(rho, t, params, drive, out);
  return out;
}

ComplexMatrix lindblad_rhs(const DensityMatrix& rho, double t, const LindbladParams& params,
                           const Drive& drive) {
  return lindblad_rhs(rho.matrix(), t, params, drive);
}

double default_step(const LindbladParams& params, const Drive& drive) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  const double fast = std::max(params.omega, drive.is_zero() ? 0.0 : drive.Omega());
  double fastest = fast;
  if (drive.kind() == Drive::Kind::fourier) {
    for (const auto& h : drive.harmonics()) {
      fastest = std::max(fastest, std::abs(h.k) * drive.Omega());
    }
  }
  return std::min(1e-3 * two_pi / params.omega, two_pi / (200.0 * fastest));
}

const DensityMatrix* Trajectory::snapshot_at(double t, double tol) const {
  for (const auto& s : snapshots) {
    if (std::abs(s.t - t) <= tol) return &s.rho;
  }
  return nullptr;
}

namespace {

ObservableRecord observe(const ComplexMatrix& rho, double t, double omega) {
  const Eigen::Index d = rho.rows();
  ObservableRecord rec;
  rec.t = t;
  Complex a{};
  double n = 0.0;
  for (Eigen::Index m = 0; m + 1 < d; ++m) {
    a += std::sqrt(static_cast<double>(m + 1)) * rho(m + 1, m);
  }
  for (Eigen::Index m = 0; m < d; ++m) {
    n += static_cast<double>(m) * rho(m, m).real();
  }
  rec.a = a;
  rec.n = n;
  rec.x = std::sqrt(2.0 / omega) * a.real();
  rec.p = std::sqrt(2.0 * omega) * a.imag();
  rec.trace_err = std::abs(rho.trace() - Complex(1.0, 0.0));
  rec.herm_err = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
  const Eigen::VectorXd ev = hermitized_eigenvalues(rho);
  rec.min_eig = ev.minCoeff();
  rec.purity = ev.squaredNorm();
  rec.entropy = von_neumann_entropy(ev);
  rec.leak = rho(d - 1, d - 1).real() + rho(d - 2, d - 2).real();
  return rec;
}

void renormalize(ComplexMatrix& rho) {
  ComplexMatrix h = 0.5 * (rho + rho.adjoint());
  rho = h / h.trace().real();
}

bool contains(const std::vector<double>& v, double t) {
  return std::any_of(v.begin(), v.end(), [t](double s) { return std::abs(s - t) <= 1e-12; });
}

}  // namespace

Trajectory evolve(const DensityMatrix& rho0, std::span<const double> t_grid,
                  const LindbladParams& params, const Drive& drive,
                  const IntegratorOptions& opts) {
  params.validate();
  if (t_grid.empty()) {
    throw InvalidParameters("evolve: empty time grid");
  }
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    if (!std::isfinite(t_grid[i]) || t_grid[i] < 0.0 || (i > 0 && !(t_grid[i] > t_grid[i - 1]))) {
      throw InvalidParameters("evolve: time grid must be non-negative and strictly increasing");
    }
  }
  const double h = opts.dt.value_or(default_step(params, drive));
  if (!(h > 0.0) || !std::isfinite(h)) {
    throw InvalidParameters("evolve: step size must be positive");
  }

  std::vector<double> grid(t_grid.begin(), t_grid.end());
  std::vector<double> stops = grid;
  for (double s : opts.snapshot_times) {
    if (!std::isfinite(s) || s < 0.0) {
      throw InvalidParameters("evolve: snapshot times must be non-negative");
    }
    if (!contains(stops, s)) stops.push_back(s);
  }
  std::sort(stops.begin(), stops.end());

  Trajectory traj;
  traj.step = h;
  traj.times = grid;
  traj.records.reserve(grid.size());

  ComplexMatrix rho = rho0.matrix();
  const Eigen::Index d = rho.rows();
  ComplexMatrix k1(d, d), k2(d, d), k3(d, d), k4(d, d), tmp(d, d);
  bool leak_warned = false;
  long since_renorm = 0;
  double t = 0.0;

  auto record_stop = [&](double ts) {
    if (!rho.allFinite()) {
      throw IntegrationDiverged("evolve: state became non-finite at t = " + std::to_string(ts) +
                                "; use a smaller step or a larger dim");
    }
    ObservableRecord rec = observe(rho, ts, params.omega);
    if (rec.min_eig < opts.diverge_eig) {
      std::ostringstream os;
      os << "evolve: positivity violated at t = " << ts << " (min eigenvalue " << rec.min_eig
         << "); use a smaller step or a larger dim";
      throw IntegrationDiverged(os.str());
    }
    if (!leak_warned && rec.leak > opts.leak_warn) {
      std::ostringstream os;
      os << "truncation leak: population " << rec.leak << " in the top two levels at t = " << ts
         << " exceeds " << opts.leak_warn << "; increase dim";
      traj.warnings.push_back(os.str());
      leak_warned = true;
    }
    if (contains(grid, ts)) traj.records.push_back(rec);
    if (contains(opts.snapshot_times, ts)) {
      DensityTolerances tol;
      tol.trace = 1e-8;
      // post-evolution tolerance: accumulated error, not input validation
      tol.hermitian = 1e-9;
      tol.min_eig = opts.diverge_eig;
      traj.snapshots.push_back({ts, DensityMatrix::normalized(rho, tol)});
    }
  };

  for (double target : stops) {
    const double span = target - t;
    if (span > 0.0) {
      const long nsteps = std::max(1L, static_cast<long>(std::ceil(span / h - 1e-9)));
      const double hs = span / static_cast<double>(nsteps);
      const double t0 = t;
      for (long i = 0; i < nsteps; ++i) {
        const double ti = t0 + static_cast<double>(i) * hs;
        lindblad_rhs_into(rho, ti, params, drive, k1);
        tmp = rho + (0.5 * hs) * k1;
        lindblad_rhs_into(tmp, ti + 0.5 * hs, params, drive, k2);
        tmp = rho + (0.5 * hs) * k2;
        lindblad_rhs_into(tmp, ti + 0.5 * hs, params, drive, k3);
        tmp = rho + hs * k3;
        lindblad_rhs_into(tmp, ti + hs, params, drive, k4);
        rho += (hs / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        ++traj.steps_taken;
        if (opts.renorm_every > 0 && ++since_renorm >= opts.renorm_every) {
          renormalize(rho);
          since_renorm = 0;
        }
      }
      t = target;
    }
    record_stop(target);
  }
  return traj;
}

DensityMatrix geometric_state(double u, FockDim dim) {
  if (!(u >= 0.0) || !(u < 1.0)) {
    throw InvalidParameters("geometric_state: ratio must lie in [0, 1)");
  }
  ComplexMatrix m = ComplexMatrix::Zero(dim.index(), dim.index());
  double p = 1.0;
  for (Eigen::Index n = 0; n < dim.index(); ++n) {
    m(n, n) = p;
    p *= u;
  }
  return DensityMatrix::normalized(std::move(m));
}

DensityMatrix steady_state(const LindbladParams& params, FockDim dim) {
  params.validate();
  if (params.nu == 0.0) return DensityMatrix::fock(0, dim);
  return geometric_state(params.nu / params.mu, dim);
}

}  // namespace lindosc
