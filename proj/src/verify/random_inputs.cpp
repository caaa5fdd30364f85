#include "qle/random_inputs.hpp"

#include <algorithm>
#include <cmath>

#include "qle/error.hpp"
#include "qle/operators.hpp"

namespace qle {

Eigen::Vector3d Rng::unit_vector() {
  for (;;) {
    const Eigen::Vector3d v(uniform(-1, 1), uniform(-1, 1), uniform(-1, 1));
    const double n = v.norm();
    if (n > 1e-3 && n <= 1.0) return v / n;
  }
}

Eigen::Vector3d Rng::in_ball(double radius) {
  for (;;) {
    const Eigen::Vector3d v(uniform(-1, 1), uniform(-1, 1), uniform(-1, 1));
    if (v.norm() <= 1.0) return radius * v;
  }
}

std::vector<double> random_coefficients(const SphereGrid& grid, Rng& rng, int lmax, double amplitude) {
  std::vector<double> c(grid.n_coeffs(), 0.0);
  double total = 0.0;
  for (int l = 1; l <= std::min(lmax, grid.band_limit()); ++l) {
    for (int m = -l; m <= l; ++m) {
      const double v = rng.uniform(-1.0, 1.0);
      c[SphereGrid::coeff_index(l, m)] = v;
      total += std::abs(v);
    }
  }
  if (total > 0.0) {
    for (double& v : c) v *= amplitude / total;
  }
  return c;
}

EmbeddedSurface random_convex_surface(const GridPtr& grid, Rng& rng, double radius, double eps, int lmax) {
  if (lmax + 1 > grid->band_limit()) {
    throw InvalidArgument("random_convex_surface", "degree too high for the band limit");
  }
  for (;;) {
    // |Y_lm| <= sqrt((2l+1)/4pi) <= 1 for l <= 4, so sum |c| bounds sup|u|
    const auto u = grid->synthesize(random_coefficients(*grid, rng, lmax, eps));
    std::array<ScalarField, 3> X{ScalarField::constant(grid, 0.0), ScalarField::constant(grid, 0.0),
                                 ScalarField::constant(grid, 0.0)};
    for (int i = 0; i < 3; ++i) {
      std::vector<double> v(grid->size());
      for (std::size_t n = 0; n < v.size(); ++n) v[n] = radius * (1.0 + u[n]) * grid->unit_position(n)[i];
      X[i] = ScalarField(grid, std::move(v));
    }
    EmbeddedSurface s = surface_geometry(X);
    if (s.gauss_curvature().min() > 0.0) return s;
  }
}

ScalarField random_ratio_field(const GridPtr& grid, Rng& rng, double lo, double hi, int lmax) {
  auto v = grid->synthesize(random_coefficients(*grid, rng, lmax, 1.0));
  const double amp = std::max(std::abs(*std::min_element(v.begin(), v.end())),
                              std::abs(*std::max_element(v.begin(), v.end())));
  const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo) * rng.uniform(0.2, 1.0);
  for (double& x : v) x = mid + half * x / amp;
  return ScalarField(grid, std::move(v));
}

TangentField random_tangent_field(const InducedMetric& h, Rng& rng, double amplitude, int lmax) {
  const GridPtr& grid = h.grid_ptr();
  const auto f = ScalarField::from_coefficients(grid, random_coefficients(*grid, rng, lmax, 1.0));
  const auto g = ScalarField::from_coefficients(grid, random_coefficients(*grid, rng, lmax, 1.0));
  const TangentField grad_f = gradient(f, h);
  const auto dg = differential(g);
  std::vector<FrameVector> v(grid->size());
  double sup = 0.0;
  for (std::size_t n = 0; n < v.size(); ++n) {
    v[n] = {grad_f[n].theta - dg[n].phi, grad_f[n].phi + dg[n].theta};
    sup = std::max(sup, std::sqrt(h[n].quadratic(v[n], v[n])));
  }
  const double s = sup > 0.0 ? amplitude / sup : 0.0;
  for (auto& x : v) {
    x.theta *= s;
    x.phi *= s;
  }
  return TangentField(grid, std::move(v));
}

}  // namespace qle
