#include <algorithm>
#include <cmath>
#include <sstream>

#include "qle/error.hpp"
#include "qle/sphere_grid.hpp"
#include "qle/spacetime.hpp"

namespace qle {

namespace {

double radius_of(const Eigen::Vector3d& x, const char* where) {
  const double r = x.norm();
  if (!(r > 0.0)) throw SingularPoint(where, "evaluation at the origin");
  return r;
}

double max_abs(const Eigen::Matrix3d& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

Eigen::Matrix3d BowenYorkCurvature::value(const Eigen::Vector3d& x) const {
  const double r = radius_of(x, "spacetime-data::bowen_york_p");
  const Eigen::Vector3d n = x / r;
  const double pn = P_.dot(n);
  const Eigen::Matrix3d T = P_ * n.transpose() + n * P_.transpose() -
                            (Eigen::Matrix3d::Identity() - n * n.transpose()) * pn;
  return 1.5 / (r * r) * T;
}

std::array<Eigen::Matrix3d, 3> BowenYorkCurvature::derivative(const Eigen::Vector3d& x) const {
  const double r = radius_of(x, "spacetime-data::bowen_york_p");
  const Eigen::Vector3d n = x / r;
  const double pn = P_.dot(n);
  const double f = 1.5 / (r * r);
  const Eigen::Matrix3d proj = Eigen::Matrix3d::Identity() - n * n.transpose();
  const Eigen::Matrix3d T = P_ * n.transpose() + n * P_.transpose() - proj * pn;
  std::array<Eigen::Matrix3d, 3> d;
  for (int k = 0; k < 3; ++k) {
    const Eigen::Vector3d dn = proj.col(k) / r;       // d_k n
    const double dpn = (P_[k] - pn * n[k]) / r;       // d_k <P, n>
    const Eigen::Matrix3d dT = P_ * dn.transpose() + dn * P_.transpose() +
                               (dn * n.transpose() + n * dn.transpose()) * pn - proj * dpn;
    d[k] = -3.0 * n[k] / (r * r * r) * T + f * dT;
  }
  return d;
}

BowenYorkCurvature bowen_york_p(const Eigen::Vector3d& momentum) { return BowenYorkCurvature(momentum); }

std::string InitialData::name() const {
  std::ostringstream os;
  switch (family_) {
    case Family::flat: return "flat";
    case Family::schwarzschild: os << "schwarzschild(m=" << mass_ << ")"; break;
    case Family::composite:
      os << "composite(m=" << mass_ << ", P=(" << momentum_[0] << "," << momentum_[1] << ","
         << momentum_[2] << "))";
      break;
  }
  return os.str();
}

Eigen::Matrix3d InitialData::metric(const Eigen::Vector3d& x) const {
  const double r = radius_of(x, "spacetime-data::metric");
  const double p = psi(r);
  return (p * p * p * p) * Eigen::Matrix3d::Identity();
}

std::array<Eigen::Matrix3d, 3> InitialData::metric_derivative(const Eigen::Vector3d& x) const {
  const double r = radius_of(x, "spacetime-data::metric_derivative");
  const double p = psi(r);
  std::array<Eigen::Matrix3d, 3> d;
  for (int k = 0; k < 3; ++k) {
    const double dpsi = -mass_ * x[k] / (2.0 * r * r * r);
    d[k] = 4.0 * p * p * p * dpsi * Eigen::Matrix3d::Identity();
  }
  return d;
}

std::array<std::array<Eigen::Matrix3d, 3>, 3> InitialData::metric_second_derivative(
    const Eigen::Vector3d& x) const {
  const double r = radius_of(x, "spacetime-data::metric_second_derivative");
  const double p = psi(r);
  const double r3 = r * r * r, r5 = r3 * r * r;
  std::array<std::array<Eigen::Matrix3d, 3>, 3> d;
  for (int k = 0; k < 3; ++k) {
    for (int l = 0; l < 3; ++l) {
      const double pk = -mass_ * x[k] / (2.0 * r3);
      const double pl = -mass_ * x[l] / (2.0 * r3);
      const double pkl = -0.5 * mass_ * ((k == l ? 1.0 : 0.0) / r3 - 3.0 * x[k] * x[l] / r5);
      d[k][l] = (12.0 * p * p * pk * pl + 4.0 * p * p * p * pkl) * Eigen::Matrix3d::Identity();
    }
  }
  return d;
}

Eigen::Matrix3d InitialData::extrinsic(const Eigen::Vector3d& x) const {
  if (family_ != Family::composite) {
    radius_of(x, "spacetime-data::extrinsic");
    return Eigen::Matrix3d::Zero();
  }
  return BowenYorkCurvature(momentum_).value(x);
}

std::array<Eigen::Matrix3d, 3> InitialData::extrinsic_derivative(const Eigen::Vector3d& x) const {
  if (family_ != Family::composite) {
    radius_of(x, "spacetime-data::extrinsic_derivative");
    return {Eigen::Matrix3d::Zero(), Eigen::Matrix3d::Zero(), Eigen::Matrix3d::Zero()};
  }
  return BowenYorkCurvature(momentum_).derivative(x);
}

InitialData flat_data() { return InitialData(Family::flat, 0.0, Eigen::Vector3d::Zero()); }

InitialData schwarzschild_data(double mass) {
  if (!(mass > 0.0) || !std::isfinite(mass)) {
    throw InvalidArgument("spacetime-data::schwarzschild_data", "mass must be positive");
  }
  return InitialData(Family::schwarzschild, mass, Eigen::Vector3d::Zero());
}

InitialData composite_data(double mass, const Eigen::Vector3d& momentum) {
  if (!(mass >= 0.0) || !std::isfinite(mass) || !momentum.allFinite()) {
    throw InvalidArgument("spacetime-data::composite_data",
                          "mass must be non-negative and momentum finite");
  }
  return InitialData(Family::composite, mass, momentum);
}

DecayConstants decay_constants(const InitialData& data, std::span<const double> radii) {
  const GridPtr grid = SphereGrid::make(6);
  DecayConstants c;
  for (double r : radii) {
    for (std::size_t n = 0; n < grid->size(); ++n) {
      const Eigen::Vector3d x = r * grid->unit_position(n);
      const Eigen::Matrix3d a = data.metric(x) - Eigen::Matrix3d::Identity();
      double da = 0.0, dda = 0.0, dp = 0.0;
      const auto g1 = data.metric_derivative(x);
      const auto g2 = data.metric_second_derivative(x);
      const auto p1 = data.extrinsic_derivative(x);
      for (int k = 0; k < 3; ++k) {
        da = std::max(da, max_abs(g1[k]));
        dp = std::max(dp, max_abs(p1[k]));
        for (int l = 0; l < 3; ++l) dda = std::max(dda, max_abs(g2[k][l]));
      }
      c.metric = std::max(c.metric, r * max_abs(a) + r * r * da + r * r * r * dda);
      c.extrinsic = std::max(c.extrinsic, r * r * max_abs(data.extrinsic(x)) + r * r * r * dp);
    }
  }
  return c;
}

}  // namespace qle
