#pragma once

// Truncated Fock-space linear algebra for a single bosonic mode.

#include <complex>
#include <cstddef>

#include <Eigen/Dense>

namespace lindosc {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using StateVector = Eigen::VectorXcd;

/// Number of retained Fock levels |0>..|dim-1>. Always >= 2.
class FockDim {
 public:
  explicit FockDim(std::size_t levels);

  std::size_t size() const noexcept { return levels_; }
  Eigen::Index index() const noexcept { return static_cast<Eigen::Index>(levels_); }

  friend bool operator==(FockDim, FockDim) = default;

 private:
  std::size_t levels_;
};

struct LadderOps {
  ComplexMatrix a;
  ComplexMatrix adag;
  ComplexMatrix n;
};

LadderOps ladder_ops(FockDim dim);

/// Smallest dimension accepted for a coherent amplitude of squared modulus
/// `alpha_abs_sq`: dim >= 4|alpha|^2 + 10. The Poisson tail beyond that is
/// below 1e-8.
std::size_t required_dim(double alpha_abs_sq);

/// Throws TruncationOverflow naming the required dimension when `alpha`
/// does not fit into `dim`.
void check_truncation(Complex alpha, FockDim dim);

/// Coherent state e^{-|a|^2/2} sum a^n/sqrt(n!) |n>, renormalized within the
/// truncated basis.
StateVector coherent_state(Complex alpha, FockDim dim);

struct DensityTolerances {
  double hermitian = 1e-12;
  double trace = 1e-9;
  double min_eig = -1e-9;
};

/// Hermitian, positive, unit-trace matrix over a truncated Fock basis.
///
/// Instances are validated on construction and immutable afterwards.
class DensityMatrix {
 public:
  /// Validates `m` against `tol` and stores the Hermitized matrix.
  static DensityMatrix from_matrix(ComplexMatrix m, const DensityTolerances& tol = {});

  /// Hermitizes and rescales to unit trace, then validates positivity.
  static DensityMatrix normalized(ComplexMatrix m, const DensityTolerances& tol = {});

  static DensityMatrix pure(const StateVector& psi);
  static DensityMatrix fock(std::size_t level, FockDim dim);

  const ComplexMatrix& matrix() const noexcept { return m_; }
  FockDim dim() const noexcept { return dim_; }

 private:
  DensityMatrix(ComplexMatrix m, FockDim dim) : m_(std::move(m)), dim_(dim) {}

  ComplexMatrix m_;
  FockDim dim_;
};

/// trace(obs * rho). The imaginary part is returned as computed.
Complex expectation(const ComplexMatrix& obs, const DensityMatrix& rho);
Complex expectation(const ComplexMatrix& obs, const ComplexMatrix& rho);

struct Diagnostics {
  double trace_err = 0.0;
  double herm_err = 0.0;
  double min_eig = 0.0;
};

/// |trace - 1|, max |rho - rho^dagger| and the smallest eigenvalue of
/// (rho + rho^dagger)/2. Never throws; NaN input yields NaN fields.
Diagnostics density_diagnostics(const ComplexMatrix& rho) noexcept;
Diagnostics density_diagnostics(const DensityMatrix& rho) noexcept;

/// Eigenvalues of (m + m^dagger)/2 in ascending order.
Eigen::VectorXd hermitized_eigenvalues(const ComplexMatrix& m);

/// (1/2) ||rho - sigma||_1.
double trace_distance(const ComplexMatrix& rho, const ComplexMatrix& sigma);
double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma);

double purity(const DensityMatrix& rho);

/// -sum p log p over the eigenvalues; non-positive eigenvalues contribute 0.
double von_neumann_entropy(const Eigen::VectorXd& eigenvalues);

/// max |a_ij - b_ij|.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

}  // namespace lindosc
