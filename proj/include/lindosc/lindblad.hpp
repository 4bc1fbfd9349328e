#pragma once

// Brute-force evolution of the density matrix under the driven Lindblad
// generator with loss (mu) and pump (nu) channels.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lindosc/fock.hpp"
#include "lindosc/params.hpp"

namespace lindosc {

/// L rho = -i[H, rho] + (mu/2)(2 a rho a^+ - a^+a rho - rho a^+a)
///                     + (nu/2)(2 a^+ rho a - a a^+ rho - rho a a^+)
/// with H = w(n + 1/2) - f^*(t) a^+ - f(t) a, all operators truncated.
///
/// Evaluated entrywise in O(dim^2) using the band structure of a.
ComplexMatrix lindblad_rhs(const ComplexMatrix& rho, double t, const LindbladParams& params,
                           const Drive& drive);
ComplexMatrix lindblad_rhs(const DensityMatrix& rho, double t, const LindbladParams& params,
                           const Drive& drive);

/// Writes L rho into `out` (resized as needed). `rho` and `out` must not alias.
void lindblad_rhs_into(const ComplexMatrix& rho, double t, const LindbladParams& params,
                       const Drive& drive, ComplexMatrix& out);

struct IntegratorOptions {
  /// RK4 step; default_step() when unset.
  std::optional<double> dt;
  /// Re-Hermitize and renormalize every this many steps; 0 disables.
  int renorm_every = 100;
  /// Times at which a DensityMatrix snapshot is stored.
  std::vector<double> snapshot_times;
  /// Population of the top two Fock levels above which a warning is recorded.
  double leak_warn = 1e-6;
  /// Minimum eigenvalue below which the run is declared diverged.
  double diverge_eig = -1e-6;
};

/// min(1e-3 * 2 pi / w, 2 pi / (200 max(w, Omega))).
double default_step(const LindbladParams& params, const Drive& drive);

struct ObservableRecord {
  double t = 0.0;
  Complex a;
  double n = 0.0;
  double x = 0.0;
  double p = 0.0;
  double trace_err = 0.0;
  double herm_err = 0.0;
  double min_eig = 0.0;
  double purity = 0.0;
  double entropy = 0.0;
  /// Population of the two highest retained levels.
  double leak = 0.0;
};

struct Snapshot {
  double t;
  DensityMatrix rho;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<ObservableRecord> records;
  std::vector<Snapshot> snapshots;
  std::vector<std::string> warnings;
  double step = 0.0;
  long steps_taken = 0;

  const DensityMatrix* snapshot_at(double t, double tol = 1e-12) const;
};

/// Classic fixed-step RK4 from t = 0 through every point of `t_grid`
/// (non-negative, strictly increasing). Each grid interval is split into an
/// integer number of equal steps no longer than the nominal step.
///
/// Throws IntegrationDiverged when the minimum eigenvalue drops below
/// opts.diverge_eig at a recorded time.
Trajectory evolve(const DensityMatrix& rho0, std::span<const double> t_grid,
                  const LindbladParams& params, const Drive& drive,
                  const IntegratorOptions& opts = {});

/// Thermal fixed point (1 - nu/mu)(nu/mu)^n, renormalized over the
/// truncation; |0><0| for nu = 0.
DensityMatrix steady_state(const LindbladParams& params, FockDim dim);

/// Geometric (thermal) density with ratio u in [0, 1), renormalized.
DensityMatrix geometric_state(double u, FockDim dim);

}  // namespace lindosc
