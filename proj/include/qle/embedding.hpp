#pragma once

// Weyl problem: isometric embedding of a positively curved metric on S^2
// into R^3, solved by damped Gauss-Newton on the harmonic coefficients of X.

#include <optional>

#include "qle/surface.hpp"

namespace qle {

struct WeylOptions {
  /// Stop when sup |X*delta - h| <= tol * max(1, R0^2), R0 = sqrt(area / 4 pi).
  double tol = 1e-9;
  int max_iterations = 50;
};

struct WeylSolution {
  EmbeddedSurface surface;
  double residual;  // sup-norm metric mismatch, absolute
  int iterations;
  bool converged;
};

/// Throws NotConvex if the Gauss curvature of h is not positive at every
/// node and NoConvergence (carrying the best residual) if the iteration
/// stalls or runs out of steps. The result is centred (int X dv = 0) and
/// rotated to best match the parameter sphere (see normalize_gauge).
WeylSolution solve_weyl(const InducedMetric& h,
                        const std::optional<EmbeddedSurface>& initial_guess = std::nullopt,
                        const WeylOptions& options = {});

/// sup over nodes and frame components of |h(X) - h|.
double embedding_residual(const EmbeddedSurface& X, const InducedMetric& h);

/// Intrinsic Gauss curvature of h (Brioschi formula evaluated on the smooth
/// ambient representation of h).
ScalarField intrinsic_gauss_curvature(const InducedMetric& h);

/// Fixes the rigid-motion freedom: translate so that int X dv = 0, then apply
/// the proper rotation Q maximising int <Q X, y> dv over the parameter
/// sphere y (orthogonal Procrustes).
EmbeddedSurface normalize_gauge(const EmbeddedSurface& X);

}  // namespace qle
