#pragma once

#include <array>
#include <vector>

#include <Eigen/Core>

#include "qle/fields.hpp"

namespace qle {

/// An immersion X: S^2 -> R^3 given by the spherical-harmonic coefficients of
/// its three coordinate functions, with the geometry derived from them:
/// induced metric, outward unit normal, mean curvature k0 (> 0 on round
/// spheres) and Gauss curvature K.
class EmbeddedSurface {
 public:
  using Coefficients = std::array<std::vector<double>, 3>;

  /// Throws SingularMetric if X is not an immersion at some node.
  EmbeddedSurface(GridPtr grid, Coefficients coeffs);

  const SphereGrid& grid() const { return *grid_; }
  const GridPtr& grid_ptr() const { return grid_; }
  const Coefficients& coefficients() const { return coeffs_; }
  ScalarField coordinate(int i) const;

  const Eigen::Vector3d& position(std::size_t n) const { return x_[n]; }
  /// dX/dtheta and (1/sin t) dX/dphi.
  const Eigen::Vector3d& d_theta(std::size_t n) const { return xt_[n]; }
  const Eigen::Vector3d& d_phi_hat(std::size_t n) const { return xp_[n]; }
  const Eigen::Vector3d& normal(std::size_t n) const { return normal_[n]; }
  std::span<const Eigen::Vector3d> positions() const { return x_; }
  std::span<const Eigen::Vector3d> normals() const { return normal_; }

  const InducedMetric& metric() const { return metric_; }
  const ScalarField& mean_curvature() const { return k0_; }
  const ScalarField& gauss_curvature() const { return gauss_; }
  double area() const { return metric_.area(); }

  /// dX(u) for a tangent field u.
  std::vector<Eigen::Vector3d> push_forward(const TangentField& u) const;

  EmbeddedSurface rotated(const Eigen::Matrix3d& rotation) const;
  EmbeddedSurface translated(const Eigen::Vector3d& shift) const;

 private:
  GridPtr grid_;
  Coefficients coeffs_;
  std::vector<Eigen::Vector3d> x_, xt_, xp_, normal_;
  InducedMetric metric_;
  ScalarField k0_;
  ScalarField gauss_;
};

/// Geometry of the surface whose coordinate functions are sampled in X.
EmbeddedSurface surface_geometry(const std::array<ScalarField, 3>& X);

EmbeddedSurface round_surface(GridPtr grid, double radius);
/// X = (a sin t cos p, b sin t sin p, c cos t).
EmbeddedSurface ellipsoid_surface(GridPtr grid, double a, double b, double c);
/// X = R (1 + eps Y_lm) y, a radial graph over the round sphere.
EmbeddedSurface harmonic_perturbation(GridPtr grid, double radius, double eps, int l, int m);

}  // namespace qle
