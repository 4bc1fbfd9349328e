#pragma once

// Exact force-free evolution of an arbitrary initial density.

#include "lindosc/fock.hpp"
#include "lindosc/gaussian.hpp"
#include "lindosc/params.hpp"

namespace lindosc {

/// F = cosh(g t) + (g'/g) sinh(g t), E = mu sinh(g t)/(g F), G = nu sinh(g t)/(g F).
/// F(0) = 1, E(0) = G(0) = 0, and G increases monotonically toward nu/mu.
struct EFG {
  double E = 0.0;
  double F = 1.0;
  double G = 0.0;
  /// ln F, finite even where F itself overflows.
  double log_F = 0.0;
};

EFG efg(double t, const LindbladParams& params);

struct FujiiOptions {
  /// Rescale the result to unit trace.
  bool renormalize = true;
  /// A series stops once a term's trace drops below this and is still shrinking.
  double term_tol = 1e-14;
  /// Weight that may be lost above the truncation before TruncationOverflow.
  double max_trace_deficit = 1e-6;
};

/// rho(t) = (1 - G) sum_j G^j/j! a^{+j} e^{-(i w t + ln F) n} X e^{(i w t - ln F) n} a^j,
/// X = sum_k E^k/k! a^k rho0 a^{+k},
/// with ladder powers applied as exact band shifts. No renormalization is
/// applied; the trace falls short of 1 by the weight pushed past the top level.
ComplexMatrix fujii_sum(const ComplexMatrix& rho0, double t, const LindbladParams& params,
                        double term_tol = 1e-14);

DensityMatrix fujii_density(const DensityMatrix& rho0, double t, const LindbladParams& params,
                            const FujiiOptions& opts = {});

/// (1 - G) G^n from the vacuum; |0><0| when nu = 0.
DensityMatrix thermal_from_ground(double t, const LindbladParams& params, FockDim dim);

/// Coherent alpha0 spreads into a displaced thermal state with u = G(t) and
/// centre alpha0 e^{-(g + i w) t}.
GaussianState coherent_free_evolution(Complex alpha0, double t, const LindbladParams& params);

}  // namespace lindosc
