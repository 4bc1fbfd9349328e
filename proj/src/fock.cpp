#include "lindosc/fock.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "lindosc/errors.hpp"

namespace lindosc {

FockDim::FockDim(std::size_t levels) : levels_(levels) {
  if (levels < 2) {
    throw InvalidDimension("Fock dimension must be >= 2, got " + std::to_string(levels));
  }
}

LadderOps ladder_ops(FockDim dim) {
  const Eigen::Index d = dim.index();
  LadderOps ops{ComplexMatrix::Zero(d, d), ComplexMatrix::Zero(d, d), ComplexMatrix::Zero(d, d)};
  for (Eigen::Index j = 1; j < d; ++j) {
    ops.a(j - 1, j) = std::sqrt(static_cast<double>(j));
  }
  ops.adag = ops.a.adjoint();
  for (Eigen::Index j = 0; j < d; ++j) {
    ops.n(j, j) = static_cast<double>(j);
  }
  return ops;
}

std::size_t required_dim(double alpha_abs_sq) {
  return static_cast<std::size_t>(std::ceil(4.0 * alpha_abs_sq + 10.0));
}

void check_truncation(Complex alpha, FockDim dim) {
  if (!std::isfinite(alpha.real()) || !std::isfinite(alpha.imag())) {
    throw InvalidParameters("coherent amplitude is not finite");
  }
  const std::size_t need = required_dim(std::norm(alpha));
  if (dim.size() < need) {
    std::ostringstream os;
    os << "truncation overflow: |alpha|^2 = " << std::norm(alpha) << " requires dim >= " << need
       << " (have " << dim.size() << ")";
    throw TruncationOverflow(os.str(), need);
  }
}

StateVector coherent_state(Complex alpha, FockDim dim) {
  check_truncation(alpha, dim);
  const Eigen::Index d = dim.index();
  StateVector psi(d);
  // c_n = e^{-|a|^2/2} a^n / sqrt(n!), built by the recurrence c_n = c_{n-1} a / sqrt(n).
  psi(0) = std::exp(-0.5 * std::norm(alpha));
  for (Eigen::Index n = 1; n < d; ++n) {
    psi(n) = psi(n - 1) * alpha / std::sqrt(static_cast<double>(n));
  }
  psi /= psi.norm();
  return psi;
}

namespace {

double hermitian_error(const ComplexMatrix& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

ComplexMatrix hermitize(const ComplexMatrix& m) { return 0.5 * (m + m.adjoint()); }

void require_square(const ComplexMatrix& m, const char* what) {
  if (m.rows() != m.cols() || m.rows() < 2) {
    std::ostringstream os;
    os << what << ": expected a square matrix of size >= 2, got " << m.rows() << "x" << m.cols();
    throw DimensionMismatch(os.str());
  }
}

void validate_spectrum(const ComplexMatrix& h, const DensityTolerances& tol) {
  const double trace = h.trace().real();
  if (!std::isfinite(trace) || std::abs(trace - 1.0) > tol.trace) {
    std::ostringstream os;
    os << "density matrix trace " << trace << " deviates from 1 by more than " << tol.trace;
    throw InvalidState(os.str());
  }
  const double lo = hermitized_eigenvalues(h).minCoeff();
  if (lo < tol.min_eig) {
    std::ostringstream os;
    os << "density matrix has eigenvalue " << lo << " below " << tol.min_eig;
    throw InvalidState(os.str());
  }
}

}  // namespace

DensityMatrix DensityMatrix::from_matrix(ComplexMatrix m, const DensityTolerances& tol) {
  require_square(m, "DensityMatrix");
  const double herm = hermitian_error(m);
  if (!(herm <= tol.hermitian)) {
    std::ostringstream os;
    os << "matrix is not Hermitian: max|rho - rho^+| = " << herm << " > " << tol.hermitian;
    throw InvalidState(os.str());
  }
  ComplexMatrix h = hermitize(m);
  validate_spectrum(h, tol);
  const FockDim dim(static_cast<std::size_t>(h.rows()));
  return DensityMatrix(std::move(h), dim);
}

DensityMatrix DensityMatrix::normalized(ComplexMatrix m, const DensityTolerances& tol) {
  require_square(m, "DensityMatrix");
  ComplexMatrix h = hermitize(m);
  const double trace = h.trace().real();
  if (!(trace > 0.0) || !std::isfinite(trace)) {
    throw InvalidState("cannot normalize a matrix with non-positive trace");
  }
  h /= trace;
  validate_spectrum(h, tol);
  const FockDim dim(static_cast<std::size_t>(h.rows()));
  return DensityMatrix(std::move(h), dim);
}

DensityMatrix DensityMatrix::pure(const StateVector& psi) {
  const double nrm = psi.norm();
  if (!(nrm > 0.0)) {
    throw InvalidState("zero state vector");
  }
  const StateVector v = psi / nrm;
  return normalized(v * v.adjoint());
}

DensityMatrix DensityMatrix::fock(std::size_t level, FockDim dim) {
  if (level >= dim.size()) {
    throw InvalidDimension("Fock level " + std::to_string(level) + " outside dimension " +
                           std::to_string(dim.size()));
  }
  ComplexMatrix m = ComplexMatrix::Zero(dim.index(), dim.index());
  m(static_cast<Eigen::Index>(level), static_cast<Eigen::Index>(level)) = 1.0;
  return DensityMatrix(std::move(m), dim);
}

Complex expectation(const ComplexMatrix& obs, const ComplexMatrix& rho) {
  if (obs.rows() != rho.rows() || obs.cols() != rho.cols() || obs.rows() != obs.cols()) {
    std::ostringstream os;
    os << "expectation: observable " << obs.rows() << "x" << obs.cols() << " vs state "
       << rho.rows() << "x" << rho.cols();
    throw DimensionMismatch(os.str());
  }
  // trace(A rho) = sum_ij A_ij rho_ji
  return (obs.cwiseProduct(rho.transpose())).sum();
}

Complex expectation(const ComplexMatrix& obs, const DensityMatrix& rho) {
  return expectation(obs, rho.matrix());
}

Eigen::VectorXd hermitized_eigenvalues(const ComplexMatrix& m) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(hermitize(m), Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

Diagnostics density_diagnostics(const ComplexMatrix& rho) noexcept {
  constexpr double nan = std::numeric_limits<double>::quiet_NaN();
  Diagnostics d{nan, nan, nan};
  if (rho.rows() != rho.cols() || rho.rows() == 0) {
    return d;
  }
  try {
    d.trace_err = std::abs(rho.trace() - Complex(1.0, 0.0));
    d.herm_err = hermitian_error(rho);
    if (rho.allFinite()) {
      d.min_eig = hermitized_eigenvalues(rho).minCoeff();
    }
  } catch (...) {
  }
  return d;
}

Diagnostics density_diagnostics(const DensityMatrix& rho) noexcept {
  return density_diagnostics(rho.matrix());
}

double trace_distance(const ComplexMatrix& rho, const ComplexMatrix& sigma) {
  if (rho.rows() != sigma.rows() || rho.cols() != sigma.cols()) {
    throw DimensionMismatch("trace_distance: dimension mismatch");
  }
  return 0.5 * hermitized_eigenvalues(rho - sigma).cwiseAbs().sum();
}

double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
  return trace_distance(rho.matrix(), sigma.matrix());
}

double purity(const DensityMatrix& rho) {
  // trace(rho^2) = sum |rho_ij|^2 for Hermitian rho
  return rho.matrix().squaredNorm();
}

double von_neumann_entropy(const Eigen::VectorXd& eigenvalues) {
  double s = 0.0;
  for (double p : eigenvalues) {
    if (p > 0.0) {
      s -= p * std::log(p);
    }
  }
  return s;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionMismatch("max_abs_diff: dimension mismatch");
  }
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace lindosc
