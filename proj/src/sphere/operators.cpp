#include "qle/operators.hpp"

#include "qle/error.hpp"
#include "qle/simd.hpp"

namespace qle {

namespace {

// div of a tangent field on the unit round sphere from its ambient components
// W_i: sum_i (grad_sigma W_i) . e_i.
std::vector<double> round_divergence(const SphereGrid& grid,
                                     const std::vector<Eigen::Vector3d>& w) {
  const std::size_t n = grid.size();
  std::vector<double> div(n, 0.0);
  std::vector<double> comp(n);
  for (int i = 0; i < 3; ++i) {
    for (std::size_t k = 0; k < n; ++k) comp[k] = w[k][i];
    const auto d = grid.synthesize_derivatives(grid.analyze(comp), false);
    for (std::size_t k = 0; k < n; ++k) {
      div[k] += d.d_theta[k] * grid.e_theta(k)[i] + d.d_phi_hat[k] * grid.e_phi(k)[i];
    }
  }
  return div;
}

}  // namespace

double integrate(const ScalarField& f, const InducedMetric& h) {
  require_same_grid(f.grid(), h.grid(), "sphere-core::integrate");
  return simd::dot3(f.grid().weights(), f.values(), h.area_density());
}

std::vector<FrameVector> differential(const ScalarField& f) {
  const auto d = f.grid().synthesize_derivatives(f.coefficients(), false);
  std::vector<FrameVector> df(f.size());
  for (std::size_t n = 0; n < df.size(); ++n) df[n] = {d.d_theta[n], d.d_phi_hat[n]};
  return df;
}

TangentField gradient(const ScalarField& f, const InducedMetric& h) {
  require_same_grid(f.grid(), h.grid(), "sphere-core::gradient");
  auto df = differential(f);
  for (std::size_t n = 0; n < df.size(); ++n) df[n] = h[n].inverse().apply(df[n]);
  return TangentField(f.grid_ptr(), std::move(df));
}

ScalarField inner(const TangentField& u, const TangentField& v, const InducedMetric& h) {
  require_same_grid(u.grid(), h.grid(), "sphere-core::inner");
  require_same_grid(v.grid(), h.grid(), "sphere-core::inner");
  std::vector<double> out(u.size());
  for (std::size_t n = 0; n < out.size(); ++n) out[n] = h[n].quadratic(u[n], v[n]);
  return ScalarField(u.grid_ptr(), std::move(out));
}

ScalarField norm_squared(const TangentField& u, const InducedMetric& h) { return inner(u, u, h); }

ScalarField divergence(const TangentField& u, const InducedMetric& h) {
  require_same_grid(u.grid(), h.grid(), "sphere-core::divergence");
  const SphereGrid& grid = u.grid();
  const auto mu = h.area_density();
  std::vector<Eigen::Vector3d> w(u.size());
  for (std::size_t n = 0; n < w.size(); ++n) {
    w[n] = mu[n] * (u[n].theta * grid.e_theta(n) + u[n].phi * grid.e_phi(n));
  }
  auto div = round_divergence(grid, w);
  for (std::size_t n = 0; n < div.size(); ++n) div[n] /= mu[n];
  return ScalarField(u.grid_ptr(), std::move(div));
}

ScalarField laplacian(const ScalarField& f, const InducedMetric& h) {
  require_same_grid(f.grid(), h.grid(), "sphere-core::laplacian");
  return divergence(gradient(f, h), h);
}

std::vector<Eigen::Vector3d> to_ambient(const TangentField& u) {
  const SphereGrid& grid = u.grid();
  std::vector<Eigen::Vector3d> out(u.size());
  for (std::size_t n = 0; n < out.size(); ++n) {
    out[n] = u[n].theta * grid.e_theta(n) + u[n].phi * grid.e_phi(n);
  }
  return out;
}

}  // namespace qle
