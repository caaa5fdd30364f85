#include <cmath>
#include <string>

#include <Eigen/LU>

#include "qle/error.hpp"
#include "qle/operators.hpp"
#include "qle/spacetime.hpp"

namespace qle {

namespace {

constexpr const char* kWhere = "spacetime-data::coordinate_sphere";

// Unit normal of the level sets of |x| and its g-divergence at x.
struct NormalSample {
  Eigen::Vector3d nu;
  double k;
};

NormalSample level_set_normal(const InitialData& data, const Eigen::Vector3d& x) {
  const double r = x.norm();
  const Eigen::Vector3d N = x / r;
  const Eigen::Matrix3d g = data.metric(x);
  const Eigen::Matrix3d gi = g.inverse();
  const auto dg = data.metric_derivative(x);

  const Eigen::Vector3d u = gi * N;
  const double lambda = std::sqrt(N.dot(u));

  double div_u = 0.0, u_dot_dlog_sqrtg = 0.0, u_dot_dlambda = 0.0;
  for (int k = 0; k < 3; ++k) {
    const Eigen::Vector3d dN = (Eigen::Vector3d::Unit(k) - N[k] * N) / r;
    const Eigen::Vector3d du = -gi * dg[k] * u + gi * dN;
    div_u += du[k];
    u_dot_dlog_sqrtg += u[k] * 0.5 * (gi * dg[k]).trace();
    const double dlambda = (dN.dot(u) + N.dot(du)) / (2.0 * lambda);
    u_dot_dlambda += u[k] * dlambda;
  }
  const double k = div_u / lambda - u_dot_dlambda / (lambda * lambda) + u_dot_dlog_sqrtg / lambda;
  return {u / lambda, k};
}

}  // namespace

TangentField connection_one_form(const InitialData& data, double r, const InducedMetric& h,
                                 std::span<const Eigen::Vector3d> nu, const ScalarField& k,
                                 const ScalarField& trp, double boost_offset) {
  const SphereGrid& grid = h.grid();
  const std::size_t N = grid.size();
  std::vector<double> psi(N);
  for (std::size_t n = 0; n < N; ++n) {
    const double ratio = trp[n] / k[n];
    if (!(std::abs(ratio) < 1.0)) {
      throw NotSpacelike("spacetime-data::connection_one_form",
                         "|tr p| >= k at node " + std::to_string(n));
    }
    psi[n] = std::atanh(ratio) + boost_offset;
  }
  const auto dpsi = differential(ScalarField(h.grid_ptr(), std::move(psi)));

  std::vector<FrameVector> dual(N);
  for (std::size_t n = 0; n < N; ++n) {
    const Eigen::Vector3d x = r * grid.unit_position(n);
    const Eigen::Vector3d pnu = data.extrinsic(x) * nu[n];
    const FrameVector form{-r * grid.e_theta(n).dot(pnu) + dpsi[n].theta,
                           -r * grid.e_phi(n).dot(pnu) + dpsi[n].phi};
    dual[n] = h[n].inverse().apply(form);
  }
  return TangentField(h.grid_ptr(), std::move(dual));
}

SurfaceData coordinate_sphere(const InitialData& data, double r, const GridPtr& grid) {
  if (!(r > 0.0) || !std::isfinite(r)) throw InvalidArgument(kWhere, "radius must be positive");
  const std::size_t N = grid->size();
  std::vector<Sym2> h(N);
  std::vector<double> k(N), trp(N), Hnorm(N);
  std::vector<Eigen::Vector3d> nu(N);
  for (std::size_t n = 0; n < N; ++n) {
    const Eigen::Vector3d x = r * grid->unit_position(n);
    const Eigen::Vector3d et = grid->e_theta(n), ep = grid->e_phi(n);
    const Eigen::Matrix3d g = data.metric(x);
    h[n] = Sym2{r * r * et.dot(g * et), r * r * et.dot(g * ep), r * r * ep.dot(g * ep)};

    const NormalSample s = level_set_normal(data, x);
    nu[n] = s.nu;
    k[n] = s.k;
    const Eigen::Matrix3d p = data.extrinsic(x);
    trp[n] = (g.inverse() * p).trace() - s.nu.dot(p * s.nu);
    const double H2 = k[n] * k[n] - trp[n] * trp[n];
    if (!(k[n] > 0.0) || !(H2 > 0.0)) {
      throw NotSpacelike(kWhere, "mean curvature vector not spacelike at node " + std::to_string(n) +
                                     " (r = " + std::to_string(r) + ")");
    }
    Hnorm[n] = std::sqrt(H2);
  }

  InducedMetric metric(grid, std::move(h));
  ScalarField kf(grid, std::move(k));
  ScalarField trpf(grid, std::move(trp));
  TangentField alpha = connection_one_form(data, r, metric, nu, kf, trpf);
  return SurfaceData{r,
                     std::move(metric),
                     std::move(kf),
                     std::move(trpf),
                     ScalarField(grid, std::move(Hnorm)),
                     std::move(alpha),
                     std::move(nu)};
}

SurfaceData flat_slice_data(const InducedMetric& h, const ScalarField& k0) {
  require_same_grid(h.grid(), k0.grid(), "spacetime-data::flat_slice_data");
  return synthetic_data(h, k0, TangentField::zero(h.grid_ptr()));
}

SurfaceData synthetic_data(const InducedMetric& h, const ScalarField& Hnorm, const TangentField& V) {
  require_same_grid(h.grid(), Hnorm.grid(), "spacetime-data::synthetic_data");
  require_same_grid(h.grid(), V.grid(), "spacetime-data::synthetic_data");
  if (!(Hnorm.min() > 0.0)) {
    throw NotSpacelike("spacetime-data::synthetic_data", "|H| must be positive everywhere");
  }
  std::vector<Eigen::Vector3d> nu(h.size());
  for (std::size_t n = 0; n < nu.size(); ++n) nu[n] = h.grid().unit_position(n);
  return SurfaceData{0.0, h, Hnorm, ScalarField::constant(h.grid_ptr(), 0.0), Hnorm, V, std::move(nu)};
}

}  // namespace qle
