#include <numbers>

#include "qle/error.hpp"
#include "qle/spacetime.hpp"

namespace qle {

double adm_energy(const InitialData& data, double r, int band_limit) {
  if (!(r > 0.0)) throw InvalidArgument("spacetime-data::adm_energy", "radius must be positive");
  const GridPtr grid = SphereGrid::make(band_limit);
  const auto w = grid->weights();
  double sum = 0.0;
  for (std::size_t n = 0; n < grid->size(); ++n) {
    const Eigen::Vector3d& y = grid->unit_position(n);
    const auto dg = data.metric_derivative(r * y);
    double integrand = 0.0;
    for (int i = 0; i < 3; ++i) {
      double flux = 0.0;
      for (int j = 0; j < 3; ++j) flux += dg[j](i, j) - dg[i](j, j);
      integrand += flux * y[i];
    }
    sum += w[n] * integrand;
  }
  return sum * r * r / (16.0 * std::numbers::pi);
}

Eigen::Vector3d adm_momentum(const InitialData& data, double r, int band_limit) {
  if (!(r > 0.0)) throw InvalidArgument("spacetime-data::adm_momentum", "radius must be positive");
  const GridPtr grid = SphereGrid::make(band_limit);
  const auto w = grid->weights();
  Eigen::Vector3d sum = Eigen::Vector3d::Zero();
  for (std::size_t n = 0; n < grid->size(); ++n) {
    const Eigen::Vector3d& y = grid->unit_position(n);
    const Eigen::Matrix3d p = data.extrinsic(r * y);
    sum += w[n] * (p * y - p.trace() * y);
  }
  return sum * r * r / (8.0 * std::numbers::pi);
}

}  // namespace qle
