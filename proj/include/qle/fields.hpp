#pragma once

#include <array>
#include <functional>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "qle/sphere_grid.hpp"

namespace qle {

/// Real samples at every grid node. Values are finite by construction.
class ScalarField {
 public:
  ScalarField(GridPtr grid, std::vector<double> values);

  static ScalarField constant(GridPtr grid, double value);
  static ScalarField from_coefficients(GridPtr grid, std::span<const double> coeffs);
  /// Samples f(y) at the unit position y of each node.
  static ScalarField from_function(GridPtr grid, const std::function<double(const Eigen::Vector3d&)>& f);

  const SphereGrid& grid() const { return *grid_; }
  const GridPtr& grid_ptr() const { return grid_; }
  std::span<const double> values() const { return values_; }
  double operator[](std::size_t n) const { return values_[n]; }
  std::size_t size() const { return values_.size(); }

  std::vector<double> coefficients() const { return grid_->analyze(values_); }
  double min() const;
  double max() const;

 private:
  GridPtr grid_;
  std::vector<double> values_;
};

/// Components of a tangent vector along the round orthonormal frame
/// (e_theta, e_phi). Coordinate components are (u_theta, u_phi / sin t).
struct FrameVector {
  double theta = 0.0;
  double phi = 0.0;
};

class TangentField {
 public:
  TangentField(GridPtr grid, std::vector<FrameVector> components);
  static TangentField zero(GridPtr grid);

  const SphereGrid& grid() const { return *grid_; }
  const GridPtr& grid_ptr() const { return grid_; }
  std::span<const FrameVector> components() const { return components_; }
  const FrameVector& operator[](std::size_t n) const { return components_[n]; }
  std::size_t size() const { return components_.size(); }

 private:
  GridPtr grid_;
  std::vector<FrameVector> components_;
};

/// Symmetric 2x2 tensor in the round orthonormal frame.
struct Sym2 {
  double tt = 0.0;
  double tp = 0.0;
  double pp = 0.0;

  double det() const { return tt * pp - tp * tp; }
  double trace() const { return tt + pp; }
  Sym2 inverse() const {
    const double d = det();
    return {pp / d, -tp / d, tt / d};
  }
  FrameVector apply(const FrameVector& v) const {
    return {tt * v.theta + tp * v.phi, tp * v.theta + pp * v.phi};
  }
  double quadratic(const FrameVector& u, const FrameVector& v) const {
    return tt * u.theta * v.theta + tp * (u.theta * v.phi + u.phi * v.theta) + pp * u.phi * v.phi;
  }
};

/// Riemannian metric h on S^2 stored by its round-frame components
///   hat_tt = h_tt,  hat_tp = h_tp / sin t,  hat_pp = h_pp / sin^2 t
/// and the area density mu = sqrt(det hat h), so that dv_h = mu dOmega.
class InducedMetric {
 public:
  /// Throws SingularMetric if any node is not positive definite.
  InducedMetric(GridPtr grid, std::vector<Sym2> frame_components);

  static InducedMetric round(GridPtr grid, double radius);
  /// Metric whose tangential part is the smooth ambient symmetric tensor
  /// field T (6 components xx, xy, xz, yy, yz, zz, sampled per node).
  static InducedMetric from_ambient(GridPtr grid, std::span<const Eigen::Matrix3d> tensor);

  const SphereGrid& grid() const { return *grid_; }
  const GridPtr& grid_ptr() const { return grid_; }
  std::span<const Sym2> frame() const { return frame_; }
  const Sym2& operator[](std::size_t n) const { return frame_[n]; }
  std::span<const double> area_density() const { return area_density_; }
  std::size_t size() const { return frame_.size(); }

  /// Coordinate components (h_tt, h_tp, h_pp) at node n.
  std::array<double, 3> coordinate_components(std::size_t n) const;
  /// Ambient symmetric tensor sum_ab hat_ab e_a (x) e_b at node n.
  Eigen::Matrix3d ambient(std::size_t n) const;

  double area() const;

 private:
  GridPtr grid_;
  std::vector<Sym2> frame_;
  std::vector<double> area_density_;
};

/// Throws InvalidArgument naming `where` unless both grids share a band limit.
void require_same_grid(const SphereGrid& a, const SphereGrid& b, const char* where);

}  // namespace qle
