#pragma once

// Analytic asymptotically flat initial data (g, p) on an R^3 end, the
// geometry of coordinate spheres |x| = r in it, and the ADM flux integrals.
//
// Conventions: nu is the outward g-unit normal of S_r, k = div_g nu (so
// k = 2/r + O(r^-2)), trp = tr_g p - p(nu, nu), |H| = sqrt(k^2 - trp^2).
// The connection one-form of the canonical normal frame is
//   alpha = -p(., nu)|_{TS} + d psi,   psi = artanh(trp / k).

#include <array>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "qle/fields.hpp"

namespace qle {

/// Trace-free (w.r.t. delta) extrinsic curvature with ADM momentum P:
///   p_ij = 3/(2 r^2) [P_i n_j + P_j n_i - (delta_ij - n_i n_j) <P, n>].
class BowenYorkCurvature {
 public:
  explicit BowenYorkCurvature(const Eigen::Vector3d& momentum) : P_(momentum) {}
  /// Throws SingularPoint at the origin.
  Eigen::Matrix3d value(const Eigen::Vector3d& x) const;
  /// Entry k holds d_k p_ij.
  std::array<Eigen::Matrix3d, 3> derivative(const Eigen::Vector3d& x) const;
  const Eigen::Vector3d& momentum() const { return P_; }

 private:
  Eigen::Vector3d P_;
};

BowenYorkCurvature bowen_york_p(const Eigen::Vector3d& momentum);

enum class Family { flat, schwarzschild, composite };

/// Conformally flat metric g = psi^4 delta with psi = 1 + m/(2r) (isotropic
/// Schwarzschild; m = 0 is flat space) plus, for the composite family, the
/// Bowen-York extrinsic curvature. The composite data do not satisfy the
/// momentum constraint at order m|P|; they serve as an analytic family with
/// known ADM charges and the right fall-off.
class InitialData {
 public:
  Family family() const { return family_; }
  double mass() const { return mass_; }
  const Eigen::Vector3d& momentum() const { return momentum_; }
  std::string name() const;

  Eigen::Matrix3d metric(const Eigen::Vector3d& x) const;
  /// Entry k holds d_k g_ij.
  std::array<Eigen::Matrix3d, 3> metric_derivative(const Eigen::Vector3d& x) const;
  /// Entry (k, l) holds d_k d_l g_ij.
  std::array<std::array<Eigen::Matrix3d, 3>, 3> metric_second_derivative(const Eigen::Vector3d& x) const;
  Eigen::Matrix3d extrinsic(const Eigen::Vector3d& x) const;
  std::array<Eigen::Matrix3d, 3> extrinsic_derivative(const Eigen::Vector3d& x) const;

  friend InitialData flat_data();
  friend InitialData schwarzschild_data(double mass);
  friend InitialData composite_data(double mass, const Eigen::Vector3d& momentum);

 private:
  InitialData(Family family, double mass, const Eigen::Vector3d& momentum)
      : family_(family), mass_(mass), momentum_(momentum) {}

  double psi(double r) const { return 1.0 + mass_ / (2.0 * r); }

  Family family_;
  double mass_;
  Eigen::Vector3d momentum_;
};

InitialData flat_data();
/// Throws InvalidArgument unless m > 0.
InitialData schwarzschild_data(double mass);
/// Throws InvalidArgument unless m >= 0.
InitialData composite_data(double mass, const Eigen::Vector3d& momentum);

/// Largest observed values of
///   r|a_ij| + r^2|d a_ij| + r^3|dd a_ij|   (a = g - delta)
///   r^2|p_ij| + r^3|d p_ij|
/// over sample directions at each radius (max-norm over components).
struct DecayConstants {
  double metric = 0.0;
  double extrinsic = 0.0;
};
DecayConstants decay_constants(const InitialData& data, std::span<const double> radii);

/// Physical data on a 2-surface. `alpha` holds the h-dual of the connection
/// one-form, i.e. the vector field V.
struct SurfaceData {
  double r = 0.0;
  InducedMetric h;
  ScalarField k;
  ScalarField trp;
  ScalarField Hnorm;
  TangentField alpha;
  std::vector<Eigen::Vector3d> nu;
};

/// Data on S_r = {|x| = r}. Throws NotSpacelike if |trp| >= k anywhere and
/// SingularMetric if the induced metric degenerates.
SurfaceData coordinate_sphere(const InitialData& data, double r, const GridPtr& grid);

/// Dual of alpha on S_r given its already-computed geometry. `boost_offset`
/// is added to psi (a constant shift, which leaves alpha unchanged).
TangentField connection_one_form(const InitialData& data, double r, const InducedMetric& h,
                                 std::span<const Eigen::Vector3d> nu, const ScalarField& k,
                                 const ScalarField& trp, double boost_offset = 0.0);

/// Data of a surface in a flat slice of Minkowski space: |H| = k0, alpha = 0.
SurfaceData flat_slice_data(const InducedMetric& h, const ScalarField& k0);

/// Hand-made data with trp = 0: k = |H| = Hnorm, alpha dual = V.
SurfaceData synthetic_data(const InducedMetric& h, const ScalarField& Hnorm, const TangentField& V);

/// (1/16 pi) int_{S_r} (d_j g_ij - d_i g_jj) n^i dA with the coordinate
/// normal n = x/r and flat area element, at quadrature band limit L.
double adm_energy(const InitialData& data, double r, int band_limit = 24);
/// (1/8 pi) int_{S_r} (p_ik - delta_ik tr p) n^i dA, same measure.
Eigen::Vector3d adm_momentum(const InitialData& data, double r, int band_limit = 24);

}  // namespace qle
