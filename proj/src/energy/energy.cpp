#include "qle/energy.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qle/error.hpp"
#include "qle/operators.hpp"

namespace qle {

namespace {

constexpr double kEightPi = 8.0 * std::numbers::pi;

// asinh evaluated on |x| and signed afterwards, so that large negative
// arguments do not lose digits to cancellation.
double odd_asinh(double x) { return std::copysign(std::asinh(std::abs(x)), x); }

// Integrand of E~ at one node for |grad tau|^2 = g, lap tau = L.
double e_tilde_density(double k0, double H, double g, double L, const char* where) {
  const double s = guarded_sqrt(1.0 + g, where);
  const double ref = guarded_sqrt(k0 * k0 * (1.0 + g) + L * L, where);
  const double phys = guarded_sqrt(H * H * (1.0 + g) + L * L, where);
  return ref - phys - L * (odd_asinh(L / (s * k0)) - odd_asinh(L / (s * H)));
}

void check_inputs(const EmbeddedSurface& X, const SurfaceData& data, const char* where) {
  require_same_grid(X.grid(), data.Hnorm.grid(), where);
  if (!(data.Hnorm.min() > 0.0)) throw NotSpacelike(where, "|H| must be positive everywhere");
  if (!(X.mean_curvature().min() > 0.0)) {
    throw NumericalDomain(where, "reference mean curvature k0 must be positive everywhere");
  }
}

Eigen::Vector3d momentum_mean(const EmbeddedSurface& X, const SurfaceData& data) {
  const auto pushed = X.push_forward(data.alpha);
  const auto w = X.grid().weights();
  const auto mu = X.metric().area_density();
  Eigen::Vector3d sum = Eigen::Vector3d::Zero();
  for (std::size_t n = 0; n < pushed.size(); ++n) sum += w[n] * mu[n] * pushed[n];
  return sum / kEightPi;
}

}  // namespace

Eigen::Vector3d BoostVector::omega() const {
  const double r = rho();
  if (!(r > 0.0)) throw InvalidArgument("energy::BoostVector", "direction undefined for a = 0");
  return a / r;
}

const char* causal_name(CausalType t) {
  switch (t) {
    case CausalType::timelike_future: return "timelike-future";
    case CausalType::null: return "null";
    case CausalType::spacelike: return "spacelike";
    case CausalType::timelike_past: return "timelike-past";
  }
  return "unknown";
}

CausalType classify(double m, const Eigen::Vector3d& V, double tol) {
  const double s = -m * m + V.squaredNorm();
  if (std::abs(s) <= tol) return CausalType::null;
  if (s > 0.0) return CausalType::spacelike;
  return m > 0.0 ? CausalType::timelike_future : CausalType::timelike_past;
}

ScalarField tau(const EmbeddedSurface& X, const BoostVector& T0) {
  std::vector<double> v(X.grid().size());
  for (std::size_t n = 0; n < v.size(); ++n) v[n] = -T0.a.dot(X.position(n));
  return ScalarField(X.grid_ptr(), std::move(v));
}

double liu_yau_mass(const EmbeddedSurface& X, const SurfaceData& data) {
  require_same_grid(X.grid(), data.Hnorm.grid(), "energy::liu_yau_mass");
  std::vector<double> d(X.grid().size());
  for (std::size_t n = 0; n < d.size(); ++n) d[n] = X.mean_curvature()[n] - data.Hnorm[n];
  return integrate(ScalarField(X.grid_ptr(), std::move(d)), X.metric()) / kEightPi;
}

double brown_york_mass(const EmbeddedSurface& X, const SurfaceData& data) {
  require_same_grid(X.grid(), data.k.grid(), "energy::brown_york_mass");
  std::vector<double> d(X.grid().size());
  for (std::size_t n = 0; n < d.size(); ++n) d[n] = X.mean_curvature()[n] - data.k[n];
  return integrate(ScalarField(X.grid_ptr(), std::move(d)), X.metric()) / kEightPi;
}

FourVectorW momentum_four_vector(const EmbeddedSurface& X, const SurfaceData& data) {
  check_inputs(X, data, "energy::momentum_four_vector");
  FourVectorW W;
  W.V = momentum_mean(X, data);
  W.m_LY = liu_yau_mass(X, data);
  W.causal = classify(W.m_LY, W.V);
  return W;
}

double bound_constant_C(const EmbeddedSurface& X, const SurfaceData& data) {
  check_inputs(X, data, "energy::bound_constant_C");
  const ScalarField& k0 = X.mean_curvature();
  double sup = 0.0;
  std::vector<double> gap(k0.size());
  for (std::size_t n = 0; n < gap.size(); ++n) {
    const double r = k0[n] / data.Hnorm[n];
    sup = std::max(sup, std::abs(r * r + r - 2.0));
    gap[n] = std::abs(k0[n] - data.Hnorm[n]);
  }
  return sup * integrate(ScalarField(X.grid_ptr(), std::move(gap)), X.metric()) / kEightPi;
}

EnergyBounds energy_bounds(const FourVectorW& W, double C, const BoostVector& T0) {
  const double lower = T0.time_component() * W.m_LY - T0.a.dot(W.V);
  return {lower, lower + C * T0.time_component()};
}

EnergyReport wang_yau_energy(const EmbeddedSurface& X, const SurfaceData& data, const BoostVector& T0) {
  constexpr const char* where = "energy::wang_yau_energy";
  check_inputs(X, data, where);
  const InducedMetric& h = X.metric();
  const ScalarField t = tau(X, T0);
  const ScalarField grad2 = norm_squared(gradient(t, h), h);
  const ScalarField lap = laplacian(t, h);

  std::vector<double> density(t.size());
  for (std::size_t n = 0; n < density.size(); ++n) {
    density[n] = e_tilde_density(X.mean_curvature()[n], data.Hnorm[n], grad2[n], lap[n], where);
  }

  EnergyReport rep;
  rep.E_tilde = integrate(ScalarField(X.grid_ptr(), std::move(density)), h) / kEightPi;
  const FourVectorW W = momentum_four_vector(X, data);
  rep.boost_term = -T0.a.dot(W.V);
  rep.E = rep.E_tilde + rep.boost_term;
  rep.m_LY = W.m_LY;
  rep.C = bound_constant_C(X, data);
  const EnergyBounds b = energy_bounds(W, rep.C, T0);
  rep.lower = b.lower;
  rep.upper = b.upper;
  return rep;
}

double e_tilde_rho_omega(const EmbeddedSurface& X, const SurfaceData& data, double rho,
                         const Eigen::Vector3d& omega) {
  constexpr const char* where = "energy::e_tilde_rho_omega";
  check_inputs(X, data, where);
  if (!(rho >= 0.0) || !std::isfinite(rho)) throw InvalidArgument(where, "rho must be >= 0");
  if (rho == 0.0) return wang_yau_energy(X, data, BoostVector{}).E_tilde;
  if (std::abs(omega.norm() - 1.0) > 1e-12) throw InvalidArgument(where, "omega must be a unit vector");

  const ScalarField& k0 = X.mean_curvature();
  const double rho2 = rho * rho;
  const double top = std::sqrt(1.0 + rho2);
  std::vector<double> density(k0.size());
  for (std::size_t n = 0; n < density.size(); ++n) {
    const double p = omega.dot(X.normal(n));
    const double q = guarded_sqrt(1.0 - p * p, where);
    const double f = rho * p / std::sqrt(1.0 + rho2 * q * q);
    const double tt = data.Hnorm[n] / k0[n];
    const double B = top - guarded_sqrt(rho2 * p * p + tt * tt * (1.0 + rho2 * q * q), where);
    const double F = rho * p * (odd_asinh(f / tt) - odd_asinh(f));
    density[n] = k0[n] * (B + F);
  }
  return integrate(ScalarField(X.grid_ptr(), std::move(density)), X.metric()) / kEightPi;
}

EnergyFunctional::EnergyFunctional(const EmbeddedSurface& X, const SurfaceData& data) {
  check_inputs(X, data, "energy::EnergyFunctional");
  const InducedMetric& h = X.metric();
  const std::size_t N = X.grid().size();
  const auto w = X.grid().weights();
  const auto mu = h.area_density();

  dv_.resize(N);
  k0_.resize(N);
  H_.resize(N);
  for (std::size_t n = 0; n < N; ++n) {
    dv_[n] = w[n] * mu[n];
    k0_[n] = X.mean_curvature()[n];
    H_[n] = data.Hnorm[n];
  }

  std::array<TangentField, 3> grads{TangentField::zero(X.grid_ptr()), TangentField::zero(X.grid_ptr()),
                                    TangentField::zero(X.grid_ptr())};
  lap_X_.assign(N, Eigen::Vector3d::Zero());
  for (int i = 0; i < 3; ++i) {
    const ScalarField xi = X.coordinate(i);
    grads[i] = gradient(xi, h);
    const ScalarField li = laplacian(xi, h);
    for (std::size_t n = 0; n < N; ++n) lap_X_[n][i] = li[n];
  }
  grad_gram_.assign(N, Eigen::Matrix3d::Zero());
  for (std::size_t n = 0; n < N; ++n) {
    for (int i = 0; i < 3; ++i) {
      for (int j = i; j < 3; ++j) {
        const double v = h[n].quadratic(grads[i][n], grads[j][n]);
        grad_gram_[n](i, j) = v;
        grad_gram_[n](j, i) = v;
      }
    }
  }
  W_ = momentum_four_vector(X, data);
  C_ = bound_constant_C(X, data);
}

double EnergyFunctional::energy_tilde(const Eigen::Vector3d& a) const {
  constexpr const char* where = "energy::EnergyFunctional";
  double sum = 0.0;
  for (std::size_t n = 0; n < dv_.size(); ++n) {
    const double g = a.dot(grad_gram_[n] * a);
    const double L = -a.dot(lap_X_[n]);
    sum += dv_[n] * e_tilde_density(k0_[n], H_[n], g, L, where);
  }
  return sum / kEightPi;
}

double EnergyFunctional::energy(const Eigen::Vector3d& a) const { return energy_tilde(a) - a.dot(W_.V); }

EnergyReport EnergyFunctional::report(const Eigen::Vector3d& a) const {
  EnergyReport rep;
  rep.E_tilde = energy_tilde(a);
  rep.boost_term = -a.dot(W_.V);
  rep.E = rep.E_tilde + rep.boost_term;
  rep.m_LY = W_.m_LY;
  rep.C = C_;
  const EnergyBounds b = energy_bounds(W_, C_, BoostVector{a});
  rep.lower = b.lower;
  rep.upper = b.upper;
  return rep;
}

}  // namespace qle
