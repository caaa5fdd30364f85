#include "qle/fields.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qle/error.hpp"
#include "qle/simd.hpp"

namespace qle {

double guarded_sqrt(double x, const char* where) {
  if (x >= 0.0) return std::sqrt(x);
  if (x >= -1e-12) return 0.0;
  throw NumericalDomain(where, "square-root argument " + std::to_string(x) + " is negative");
}

void require_same_grid(const SphereGrid& a, const SphereGrid& b, const char* where) {
  if (!a.same_as(b)) {
    throw InvalidArgument(where, "grid mismatch: band limits " + std::to_string(a.band_limit()) +
                                     " and " + std::to_string(b.band_limit()));
  }
}

ScalarField::ScalarField(GridPtr grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (values_.size() != grid_->size()) {
    throw InvalidArgument("sphere-core::ScalarField", "value count does not match grid");
  }
  for (double v : values_) {
    if (!std::isfinite(v)) throw InvalidArgument("sphere-core::ScalarField", "non-finite sample");
  }
}

ScalarField ScalarField::constant(GridPtr grid, double value) {
  const std::size_t n = grid->size();
  return ScalarField(std::move(grid), std::vector<double>(n, value));
}

ScalarField ScalarField::from_coefficients(GridPtr grid, std::span<const double> coeffs) {
  auto v = grid->synthesize(coeffs);
  return ScalarField(std::move(grid), std::move(v));
}

ScalarField ScalarField::from_function(GridPtr grid,
                                       const std::function<double(const Eigen::Vector3d&)>& f) {
  std::vector<double> v(grid->size());
  for (std::size_t n = 0; n < v.size(); ++n) v[n] = f(grid->unit_position(n));
  return ScalarField(std::move(grid), std::move(v));
}

double ScalarField::min() const { return *std::min_element(values_.begin(), values_.end()); }
double ScalarField::max() const { return *std::max_element(values_.begin(), values_.end()); }

TangentField::TangentField(GridPtr grid, std::vector<FrameVector> components)
    : grid_(std::move(grid)), components_(std::move(components)) {
  if (components_.size() != grid_->size()) {
    throw InvalidArgument("sphere-core::TangentField", "component count does not match grid");
  }
}

TangentField TangentField::zero(GridPtr grid) {
  const std::size_t n = grid->size();
  return TangentField(std::move(grid), std::vector<FrameVector>(n));
}

InducedMetric::InducedMetric(GridPtr grid, std::vector<Sym2> frame_components)
    : grid_(std::move(grid)), frame_(std::move(frame_components)) {
  if (frame_.size() != grid_->size()) {
    throw InvalidArgument("sphere-core::InducedMetric", "component count does not match grid");
  }
  area_density_.resize(frame_.size());
  for (std::size_t n = 0; n < frame_.size(); ++n) {
    const Sym2& h = frame_[n];
    const double d = h.det();
    if (!(h.tt > 0.0) || !(d > 0.0) || !std::isfinite(d)) {
      throw SingularMetric("sphere-core::InducedMetric",
                           "metric not positive definite at node " + std::to_string(n));
    }
    area_density_[n] = std::sqrt(d);
  }
}

InducedMetric InducedMetric::round(GridPtr grid, double radius) {
  const std::size_t n = grid->size();
  const double r2 = radius * radius;
  return InducedMetric(std::move(grid), std::vector<Sym2>(n, Sym2{r2, 0.0, r2}));
}

InducedMetric InducedMetric::from_ambient(GridPtr grid, std::span<const Eigen::Matrix3d> tensor) {
  if (tensor.size() != grid->size()) {
    throw InvalidArgument("sphere-core::InducedMetric", "tensor count does not match grid");
  }
  std::vector<Sym2> h(grid->size());
  for (std::size_t n = 0; n < h.size(); ++n) {
    const auto& et = grid->e_theta(n);
    const auto& ep = grid->e_phi(n);
    const Eigen::Matrix3d& T = tensor[n];
    h[n] = Sym2{et.dot(T * et), 0.5 * (et.dot(T * ep) + ep.dot(T * et)), ep.dot(T * ep)};
  }
  return InducedMetric(std::move(grid), std::move(h));
}

std::array<double, 3> InducedMetric::coordinate_components(std::size_t n) const {
  const double s = grid_->sin_theta_at(n);
  const Sym2& h = frame_[n];
  return {h.tt, h.tp * s, h.pp * s * s};
}

Eigen::Matrix3d InducedMetric::ambient(std::size_t n) const {
  const auto& et = grid_->e_theta(n);
  const auto& ep = grid_->e_phi(n);
  const Sym2& h = frame_[n];
  return h.tt * et * et.transpose() + h.tp * (et * ep.transpose() + ep * et.transpose()) +
         h.pp * ep * ep.transpose();
}

double InducedMetric::area() const {
  return simd::dot(grid_->weights(), area_density_);
}

}  // namespace qle
