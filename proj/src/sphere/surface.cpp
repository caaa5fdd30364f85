#include "qle/surface.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/Geometry>

#include "qle/error.hpp"

namespace qle {

namespace {

struct Geometry {
  std::vector<Eigen::Vector3d> x, xt, xp, normal;
  std::vector<Sym2> h;
  std::vector<double> k0, gauss;
};

Geometry compute_geometry(const SphereGrid& grid, const EmbeddedSurface::Coefficients& coeffs) {
  const std::size_t n = grid.size();
  Geometry g;
  g.x.resize(n);
  g.xt.resize(n);
  g.xp.resize(n);
  g.normal.resize(n);
  g.h.resize(n);
  g.k0.resize(n);
  g.gauss.resize(n);

  std::vector<Eigen::Vector3d> xtt(n), xtp(n), xpp(n);
  for (int i = 0; i < 3; ++i) {
    const auto d = grid.synthesize_derivatives(coeffs[i], true);
    for (std::size_t k = 0; k < n; ++k) {
      g.x[k][i] = d.value[k];
      g.xt[k][i] = d.d_theta[k];
      g.xp[k][i] = d.d_phi_hat[k];
      xtt[k][i] = d.d_theta_theta[k];
      xtp[k][i] = d.d_theta_phi_hat[k];
      xpp[k][i] = d.d_phi_phi_hat[k];
    }
  }

  double signed_volume = 0.0;
  const auto w = grid.weights();
  for (std::size_t k = 0; k < n; ++k) {
    g.h[k] = Sym2{g.xt[k].dot(g.xt[k]), g.xt[k].dot(g.xp[k]), g.xp[k].dot(g.xp[k])};
    const Eigen::Vector3d c = g.xt[k].cross(g.xp[k]);
    const double len = c.norm();
    if (!(len > 0.0)) {
      throw SingularMetric("sphere-core::surface_geometry",
                           "degenerate immersion at node " + std::to_string(k));
    }
    g.normal[k] = c / len;
    signed_volume += w[k] * len * g.x[k].dot(g.normal[k]);
  }
  const double orient = signed_volume < 0.0 ? -1.0 : 1.0;

  for (std::size_t k = 0; k < n; ++k) {
    g.normal[k] *= orient;
    const Sym2 b{xtt[k].dot(g.normal[k]), xtp[k].dot(g.normal[k]), xpp[k].dot(g.normal[k])};
    const Sym2 hi = g.h[k].inverse();
    const double trace = hi.tt * b.tt + 2.0 * hi.tp * b.tp + hi.pp * b.pp;
    g.k0[k] = -trace;
    g.gauss[k] = b.det() / g.h[k].det();
  }
  return g;
}

}  // namespace

EmbeddedSurface::EmbeddedSurface(GridPtr grid, Coefficients coeffs)
    : grid_(std::move(grid)),
      coeffs_(std::move(coeffs)),
      metric_(InducedMetric::round(grid_, 1.0)),
      k0_(ScalarField::constant(grid_, 0.0)),
      gauss_(ScalarField::constant(grid_, 0.0)) {
  for (const auto& c : coeffs_) {
    if (c.size() != grid_->n_coeffs()) {
      throw InvalidArgument("sphere-core::surface_geometry", "coefficient count does not match grid");
    }
  }
  Geometry g = compute_geometry(*grid_, coeffs_);
  x_ = std::move(g.x);
  xt_ = std::move(g.xt);
  xp_ = std::move(g.xp);
  normal_ = std::move(g.normal);
  metric_ = InducedMetric(grid_, std::move(g.h));
  k0_ = ScalarField(grid_, std::move(g.k0));
  gauss_ = ScalarField(grid_, std::move(g.gauss));
}

ScalarField EmbeddedSurface::coordinate(int i) const {
  std::vector<double> v(x_.size());
  for (std::size_t n = 0; n < v.size(); ++n) v[n] = x_[n][i];
  return ScalarField(grid_, std::move(v));
}

std::vector<Eigen::Vector3d> EmbeddedSurface::push_forward(const TangentField& u) const {
  require_same_grid(u.grid(), *grid_, "sphere-core::push_forward");
  std::vector<Eigen::Vector3d> out(u.size());
  for (std::size_t n = 0; n < out.size(); ++n) out[n] = u[n].theta * xt_[n] + u[n].phi * xp_[n];
  return out;
}

EmbeddedSurface EmbeddedSurface::rotated(const Eigen::Matrix3d& rotation) const {
  Coefficients c;
  for (int i = 0; i < 3; ++i) {
    c[i].assign(grid_->n_coeffs(), 0.0);
    for (int j = 0; j < 3; ++j) {
      for (std::size_t q = 0; q < c[i].size(); ++q) c[i][q] += rotation(i, j) * coeffs_[j][q];
    }
  }
  return EmbeddedSurface(grid_, std::move(c));
}

EmbeddedSurface EmbeddedSurface::translated(const Eigen::Vector3d& shift) const {
  Coefficients c = coeffs_;
  const double y00 = std::sqrt(4.0 * std::numbers::pi);
  for (int i = 0; i < 3; ++i) c[i][0] += shift[i] * y00;
  return EmbeddedSurface(grid_, std::move(c));
}

EmbeddedSurface surface_geometry(const std::array<ScalarField, 3>& X) {
  require_same_grid(X[0].grid(), X[1].grid(), "sphere-core::surface_geometry");
  require_same_grid(X[0].grid(), X[2].grid(), "sphere-core::surface_geometry");
  return EmbeddedSurface(X[0].grid_ptr(),
                         {X[0].coefficients(), X[1].coefficients(), X[2].coefficients()});
}

EmbeddedSurface round_surface(GridPtr grid, double radius) {
  return ellipsoid_surface(std::move(grid), radius, radius, radius);
}

EmbeddedSurface ellipsoid_surface(GridPtr grid, double a, double b, double c) {
  if (!(a > 0.0 && b > 0.0 && c > 0.0)) {
    throw InvalidArgument("sphere-core::ellipsoid_surface", "semi-axes must be positive");
  }
  // x = sqrt(4pi/3) Y_11, y = sqrt(4pi/3) Y_1,-1, z = sqrt(4pi/3) Y_10
  const double s = std::sqrt(4.0 * std::numbers::pi / 3.0);
  EmbeddedSurface::Coefficients coeffs;
  for (auto& v : coeffs) v.assign(grid->n_coeffs(), 0.0);
  coeffs[0][SphereGrid::coeff_index(1, 1)] = a * s;
  coeffs[1][SphereGrid::coeff_index(1, -1)] = b * s;
  coeffs[2][SphereGrid::coeff_index(1, 0)] = c * s;
  return EmbeddedSurface(std::move(grid), std::move(coeffs));
}

EmbeddedSurface harmonic_perturbation(GridPtr grid, double radius, double eps, int l, int m) {
  if (l < 0 || std::abs(m) > l || l + 1 > grid->band_limit()) {
    throw InvalidArgument("sphere-core::harmonic_perturbation",
                          "need 0 <= |m| <= l and l + 1 <= band limit");
  }
  if (!(radius > 0.0)) {
    throw InvalidArgument("sphere-core::harmonic_perturbation", "radius must be positive");
  }
  std::array<ScalarField, 3> X{ScalarField::constant(grid, 0.0), ScalarField::constant(grid, 0.0),
                               ScalarField::constant(grid, 0.0)};
  for (int i = 0; i < 3; ++i) {
    std::vector<double> v(grid->size());
    for (std::size_t n = 0; n < v.size(); ++n) {
      v[n] = radius * (1.0 + eps * grid->basis(l, m, n)) * grid->unit_position(n)[i];
    }
    X[i] = ScalarField(grid, std::move(v));
  }
  return surface_geometry(X);
}

}  // namespace qle
