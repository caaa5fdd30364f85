#pragma once

// Seeded generators for randomised checks (verify suite and property tests).
// Everything is derived from a 64-bit Mersenne Twister with explicit
// bit-to-double mapping, so streams are identical across platforms.

#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Core>

#include "qle/surface.hpp"

namespace qle {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1).
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }
  int integer(int lo, int hi) { return lo + static_cast<int>(engine_() % static_cast<std::uint64_t>(hi - lo + 1)); }
  Eigen::Vector3d unit_vector();
  /// Uniform in the ball of the given radius.
  Eigen::Vector3d in_ball(double radius);

 private:
  std::mt19937_64 engine_;
};

/// Coefficients with random entries for 1 <= l <= lmax (zero elsewhere),
/// scaled so that the sum of absolute coefficients is `amplitude`.
std::vector<double> random_coefficients(const SphereGrid& grid, Rng& rng, int lmax, double amplitude);

/// Radial graph R (1 + u) y with u of degree <= lmax and sup|u| <= eps,
/// redrawn until its Gauss curvature is positive.
EmbeddedSurface random_convex_surface(const GridPtr& grid, Rng& rng, double radius, double eps, int lmax = 4);

/// Smooth field with values in [lo, hi].
ScalarField random_ratio_field(const GridPtr& grid, Rng& rng, double lo, double hi, int lmax = 4);

/// grad f + (rotated round gradient of g) for random low-degree f, g, scaled
/// to the given amplitude (frame components w.r.t. h).
TangentField random_tangent_field(const InducedMetric& h, Rng& rng, double amplitude, int lmax = 4);

}  // namespace qle
