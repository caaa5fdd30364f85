#include "qle/verify.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>

#include "qle/embedding.hpp"
#include "qle/energy.hpp"
#include "qle/error.hpp"
#include "qle/operators.hpp"
#include "qle/random_inputs.hpp"
#include "qle/simd.hpp"
#include "qle/spacetime.hpp"

namespace qle {

namespace {

constexpr double kPi = std::numbers::pi;

std::string show(double v) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << v;
  return os.str();
}

VerifyCheck within(const std::string& name, double err, double tol) {
  return {name, err <= tol, "error " + show(err) + " (tolerance " + show(tol) + ")"};
}

}  // namespace

std::vector<VerifyCheck> run_verify(std::uint64_t seed, int band_limit) {
  std::vector<VerifyCheck> out;
  Rng rng(seed);
  const GridPtr grid = SphereGrid::make(band_limit);

  auto guarded = [&](const std::string& name, const std::function<VerifyCheck()>& body) {
    try {
      out.push_back(body());
    } catch (const std::exception& e) {
      out.push_back({name, false, std::string("threw: ") + e.what()});
    }
  };

  guarded("quadrature weights sum to 4 pi", [&] {
    double s = 0.0;
    for (double w : grid->weights()) s += w;
    return within("quadrature weights sum to 4 pi", std::abs(s - 4.0 * kPi) / (4.0 * kPi), 1e-12);
  });

  guarded("Y10 is a Laplace eigenfunction", [&] {
    std::vector<double> c(grid->n_coeffs(), 0.0);
    c[SphereGrid::coeff_index(1, 0)] = 1.0;
    const auto f = ScalarField::from_coefficients(grid, c);
    const auto lap = laplacian(f, InducedMetric::round(grid, 1.0));
    double err = 0.0;
    for (std::size_t n = 0; n < f.size(); ++n) err = std::max(err, std::abs(lap[n] + 2.0 * f[n]));
    return within("Y10 is a Laplace eigenfunction", err, 1e-10);
  });

  guarded("lap X = -k0 e on a perturbed sphere", [&] {
    const EmbeddedSurface S = random_convex_surface(grid, rng, 1.5, 0.08);
    double err = 0.0;
    for (int i = 0; i < 3; ++i) {
      const auto lap = laplacian(S.coordinate(i), S.metric());
      for (std::size_t n = 0; n < lap.size(); ++n) {
        err = std::max(err, std::abs(lap[n] + S.mean_curvature()[n] * S.normal(n)[i]));
      }
    }
    return within("lap X = -k0 e on a perturbed sphere", err, 1e-8);
  });

  guarded("SIMD kernels match the scalar reference", [&] {
    std::vector<double> a(1001), b(1001), c(1001);
    for (std::size_t i = 0; i < a.size(); ++i) {
      a[i] = rng.uniform(-1, 1);
      b[i] = rng.uniform(-1, 1);
      c[i] = rng.uniform(-1, 1);
    }
    const auto& active = simd::kernels();
    double scale = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) scale += std::abs(a[i] * b[i] * c[i]) + std::abs(a[i] * b[i]);
    const double err = std::abs(active.dot(a.data(), b.data(), a.size()) - simd::scalar::dot(a.data(), b.data(), a.size())) +
                       std::abs(active.dot3(a.data(), b.data(), c.data(), a.size()) -
                                simd::scalar::dot3(a.data(), b.data(), c.data(), a.size()));
    return VerifyCheck{"SIMD kernels match the scalar reference", err <= 1e-14 * scale,
                       std::string(simd::isa_name(active.isa)) + " vs scalar: " + show(err)};
  });

  guarded("Schwarzschild sphere mean curvature", [&] {
    const double m = 1.0, r = 10.0;
    const SurfaceData sd = coordinate_sphere(schwarzschild_data(m), r, grid);
    const double rho = r * std::pow(1.0 + m / (2.0 * r), 2);
    const double k = 2.0 / rho * std::sqrt(1.0 - 2.0 * m / rho);
    double err = 0.0;
    for (std::size_t n = 0; n < sd.k.size(); ++n) err = std::max(err, std::abs(sd.k[n] - k));
    return within("Schwarzschild sphere mean curvature", err, 1e-8);
  });

  guarded("Bowen-York momentum flux", [&] {
    const Eigen::Vector3d P = rng.in_ball(0.5);
    const auto data = composite_data(1.0, P);
    const double err = std::max((adm_momentum(data, 50.0) - P).norm(), (adm_momentum(data, 80.0) - P).norm());
    return within("Bowen-York momentum flux", err, 1e-10);
  });

  guarded("E at rest equals the Liu-Yau mass", [&] {
    const SurfaceData sd = coordinate_sphere(schwarzschild_data(1.0), 3.0, grid);
    const WeylSolution sol = solve_weyl(sd.h);
    const EnergyReport rep = wang_yau_energy(sol.surface, sd, BoostVector{});
    return within("E at rest equals the Liu-Yau mass", std::abs(rep.E - rep.m_LY), 1e-9);
  });

  guarded("sandwich estimate on random inputs", [&] {
    int violations = 0;
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
      const EmbeddedSurface S = random_convex_surface(grid, rng, rng.uniform(0.5, 3.0), 0.05);
      const ScalarField t = random_ratio_field(grid, rng, 0.5, 2.0);
      std::vector<double> H(t.size());
      for (std::size_t n = 0; n < H.size(); ++n) H[n] = t[n] * S.mean_curvature()[n];
      const SurfaceData sd = synthetic_data(S.metric(), ScalarField(grid, std::move(H)),
                                            random_tangent_field(S.metric(), rng, rng.uniform(0.0, 1.0)));
      const BoostVector T0{rng.in_ball(3.0)};
      const EnergyReport rep = wang_yau_energy(S, sd, T0);
      const double slack = 1e-9 * std::max(1.0, std::abs(rep.E));
      worst = std::max({worst, rep.lower - rep.E, rep.E - rep.upper});
      if (rep.E < rep.lower - slack || rep.E > rep.upper + slack) ++violations;
    }
    return VerifyCheck{"sandwich estimate on random inputs", violations == 0,
                       std::to_string(violations) + " violations, worst excess " + show(worst)};
  });

  guarded("Phi attains its maximum at t = 1", [&] {
    int violations = 0;
    for (int i = 0; i < 2000; ++i) {
      const double rho = rng.uniform(1e-3, 5.0);
      const double f = rng.uniform(-rho, rho);
      const double t = rng.uniform(1e-3, 10.0);
      if (phi({t, f, rho}) > phi({1.0, f, rho}) + 1e-12) ++violations;
    }
    return VerifyCheck{"Phi attains its maximum at t = 1", violations == 0, std::to_string(violations) + " violations"};
  });

  guarded("gradient of E at the origin is -V", [&] {
    const SurfaceData sd = coordinate_sphere(composite_data(1.0, rng.in_ball(0.5)), 20.0, grid);
    const WeylSolution sol = solve_weyl(sd.h);
    const EnergyFunctional E(sol.surface, sd);
    const double h = 1e-4;
    Eigen::Vector3d grad;
    for (int i = 0; i < 3; ++i) {
      const Eigen::Vector3d e = h * Eigen::Vector3d::Unit(i);
      grad[i] = (E.energy(e) - E.energy(-e)) / (2.0 * h);
    }
    return within("gradient of E at the origin is -V", (grad + E.W().V).norm() / E.W().V.norm(), 1e-4);
  });

  guarded("flat data give zero energy", [&] {
    const SurfaceData sd = coordinate_sphere(flat_data(), 5.0, grid);
    const WeylSolution sol = solve_weyl(sd.h);
    double worst = 0.0;
    for (int i = 0; i < 5; ++i) {
      worst = std::max(worst, std::abs(wang_yau_energy(sol.surface, sd, BoostVector{rng.in_ball(3.0)}).E));
    }
    return within("flat data give zero energy", worst, 1e-8);
  });

  guarded("Weyl round trip of an ellipsoid", [&] {
    const EmbeddedSurface S = ellipsoid_surface(grid, 1.0, 1.0, 1.1);
    const WeylSolution sol = solve_weyl(S.metric());
    const double err = std::max({sol.residual, std::abs(sol.surface.area() - S.area()),
                                 std::abs(integrate(sol.surface.mean_curvature(), sol.surface.metric()) -
                                          integrate(S.mean_curvature(), S.metric()))});
    return within("Weyl round trip of an ellipsoid", err, 1e-7);
  });

  return out;
}

}  // namespace qle
