#pragma once

// Quasilocal energy of a surface with data (|H|, alpha) relative to an
// isometric embedding X into a flat slice R^3 of Minkowski space and an
// observer T0 = (sqrt(1 + |a|^2), a):
//
//   E(a) = E~(a) - <a, V>,   tau = -<a, X>,
//   E~(a) = (1/8 pi) int [ sqrt(k0^2 (1 + |grad tau|^2) + (lap tau)^2)
//                        - sqrt(|H|^2 (1 + |grad tau|^2) + (lap tau)^2)
//                        - lap tau (asinh(lap tau / (sqrt(1 + |grad tau|^2) k0))
//                                 - asinh(lap tau / (sqrt(1 + |grad tau|^2) |H|))) ] dv
//
// with V = (1/8 pi) int dX(V) dv the mean of the pushed-forward dual of alpha.

#include <cmath>
#include <vector>

#include <Eigen/Core>

#include "qle/spacetime.hpp"
#include "qle/surface.hpp"

namespace qle {

/// T0 = (sqrt(1 + |a|^2), a), unit future timelike by construction.
struct BoostVector {
  Eigen::Vector3d a = Eigen::Vector3d::Zero();

  double rho() const { return a.norm(); }
  /// a / |a|; throws InvalidArgument when a = 0.
  Eigen::Vector3d omega() const;
  double time_component() const { return std::sqrt(1.0 + a.squaredNorm()); }
  /// <T0, T0> in signature (-,+,+,+).
  double minkowski_square() const { return -time_component() * time_component() + a.squaredNorm(); }
};

enum class CausalType { timelike_future, null, spacelike, timelike_past };

const char* causal_name(CausalType t);

/// W = (m_LY, V) in R^{3,1}.
struct FourVectorW {
  Eigen::Vector3d V = Eigen::Vector3d::Zero();
  double m_LY = 0.0;
  CausalType causal = CausalType::null;

  /// <W, W> = -m_LY^2 + |V|^2.
  double minkowski_square() const { return -m_LY * m_LY + V.squaredNorm(); }
};

/// Classifies (m, V) with an absolute tolerance on <W, W> for the null case.
CausalType classify(double m, const Eigen::Vector3d& V, double tol = 1e-12);

struct EnergyReport {
  double E = 0.0;
  double E_tilde = 0.0;
  double boost_term = 0.0;  // -<a, V>
  double m_LY = 0.0;
  double C = 0.0;
  double lower = 0.0;
  double upper = 0.0;
};

struct EnergyBounds {
  double lower;
  double upper;
};

struct PhiInput {
  double t;
  double f;
  double rho;
};

ScalarField tau(const EmbeddedSurface& X, const BoostVector& T0);

/// Full report, with tau, grad tau and lap tau taken from the sphere-core
/// operators on the surface metric.
EnergyReport wang_yau_energy(const EmbeddedSurface& X, const SurfaceData& data, const BoostVector& T0);

/// E~ evaluated through p = <omega, e>, q = sqrt(1 - p^2), f = rho p / sqrt(1 + rho^2 q^2),
/// t = |H| / k0 as (1/8 pi) int k0 (B + F).
double e_tilde_rho_omega(const EmbeddedSurface& X, const SurfaceData& data, double rho,
                         const Eigen::Vector3d& omega);

FourVectorW momentum_four_vector(const EmbeddedSurface& X, const SurfaceData& data);

/// (1/8 pi) int (k0 - |H|) dv.
double liu_yau_mass(const EmbeddedSurface& X, const SurfaceData& data);
/// (1/8 pi) int (k0 - k) dv.
double brown_york_mass(const EmbeddedSurface& X, const SurfaceData& data);

double phi(const PhiInput& in);
double dphi_dt(const PhiInput& in);

/// sup |k0^2/|H|^2 + k0/|H| - 2| * (1/8 pi) int |k0 - |H|| dv.
double bound_constant_C(const EmbeddedSurface& X, const SurfaceData& data);

/// lower = sqrt(1 + |a|^2) m_LY - <a, V>, upper = lower + C sqrt(1 + |a|^2).
EnergyBounds energy_bounds(const FourVectorW& W, double C, const BoostVector& T0);

/// a -> E(a) for a fixed surface, with every a-independent quantity
/// precomputed (grad X_i . grad X_j, lap X, W, C). Used by the minimiser.
class EnergyFunctional {
 public:
  EnergyFunctional(const EmbeddedSurface& X, const SurfaceData& data);

  EnergyReport report(const Eigen::Vector3d& a) const;
  double energy(const Eigen::Vector3d& a) const;
  double energy_tilde(const Eigen::Vector3d& a) const;

  const FourVectorW& W() const { return W_; }
  double C() const { return C_; }

 private:
  std::vector<double> dv_;  // quadrature weight times area density
  std::vector<double> k0_, H_;
  std::vector<Eigen::Vector3d> lap_X_;
  std::vector<Eigen::Matrix3d> grad_gram_;
  FourVectorW W_;
  double C_ = 0.0;
};

}  // namespace qle
