#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Geometry>

#include "qle/embedding.hpp"
#include "qle/error.hpp"
#include "qle/operators.hpp"
#include "qle/random_inputs.hpp"

using namespace qle;

namespace {

double total_mean_curvature(const EmbeddedSurface& S) { return integrate(S.mean_curvature(), S.metric()); }

double pointwise_distance(const EmbeddedSurface& a, const EmbeddedSurface& b) {
  double e = 0.0;
  for (std::size_t n = 0; n < a.grid().size(); ++n) e = std::max(e, (a.position(n) - b.position(n)).norm());
  return e;
}

InducedMetric conformal_metric(const GridPtr& g, double R, double eps, int l, int m) {
  std::vector<Sym2> h(g->size());
  for (std::size_t n = 0; n < h.size(); ++n) {
    const double s = R * R * (1.0 + eps * g->basis(l, m, n));
    h[n] = {s, 0.0, s};
  }
  return InducedMetric(g, std::move(h));
}

void check_round_trip(const EmbeddedSurface& S, double tol) {
  const WeylSolution sol = solve_weyl(S.metric());
  CHECK(sol.converged);
  CHECK(sol.residual <= 1e-8 * std::max(1.0, S.area() / (4.0 * std::numbers::pi)));
  CHECK(std::abs(sol.surface.area() - S.area()) <= tol);
  CHECK(std::abs(total_mean_curvature(sol.surface) - total_mean_curvature(S)) <= tol);
  CHECK(std::abs(sol.surface.mean_curvature().min() - S.mean_curvature().min()) <= tol);
  CHECK(std::abs(sol.surface.mean_curvature().max() - S.mean_curvature().max()) <= tol);
}

}  // namespace

TEST_CASE("embedding residual") {
  const GridPtr g = SphereGrid::make(16);
  const auto unit = round_surface(g, 1.0);
  CHECK(embedding_residual(unit, InducedMetric::round(g, 1.0)) <= 1e-14);
  CHECK(std::abs(embedding_residual(unit, InducedMetric::round(g, 1.1)) - 0.21) <= 1e-12);
  CHECK_THROWS_AS(embedding_residual(unit, InducedMetric::round(SphereGrid::make(8), 1.0)), InvalidArgument);
}

TEST_CASE("round metric embeds as the round sphere") {
  const GridPtr g = SphereGrid::make(24);
  for (double R : {0.3, 1.0, 40.0}) {
    const WeylSolution sol = solve_weyl(InducedMetric::round(g, R));
    CHECK(sol.converged);
    CHECK(sol.residual <= 1e-12 * R * R);
    for (std::size_t n = 0; n < g->size(); ++n) {
      CHECK(std::abs(sol.surface.position(n).norm() - R) <= 1e-12 * R);
    }
  }
}

TEST_CASE("intrinsic Gauss curvature matches the extrinsic one") {
  const GridPtr g = SphereGrid::make(24);
  Rng rng(41);
  for (int trial = 0; trial < 4; ++trial) {
    const auto S = random_convex_surface(g, rng, rng.uniform(0.5, 2.0), 0.08);
    const auto K = intrinsic_gauss_curvature(S.metric());
    double e = 0.0;
    for (std::size_t n = 0; n < K.size(); ++n) e = std::max(e, std::abs(K[n] - S.gauss_curvature()[n]));
    CHECK(e <= 1e-8 * std::max(1.0, S.gauss_curvature().max()));
  }
}

TEST_CASE("ellipsoid round trip") {
  const GridPtr g = SphereGrid::make(24);
  const auto S = ellipsoid_surface(g, 1.0, 1.0, 1.1);
  check_round_trip(S, 1e-8);

  // the ellipsoid is already centred and aligned, so the gauge-fixed
  // solution coincides with it node by node
  const WeylSolution sol = solve_weyl(S.metric());
  CHECK(pointwise_distance(sol.surface, S) <= 1e-7);
  double dk = 0.0;
  for (std::size_t n = 0; n < g->size(); ++n) dk = std::max(dk, std::abs(sol.surface.mean_curvature()[n] - S.mean_curvature()[n]));
  CHECK(dk <= 1e-8);
}

TEST_CASE("conformal perturbation of the round metric") {
  const GridPtr g = SphereGrid::make(24);
  const InducedMetric h = conformal_metric(g, 1.0, 0.01, 2, 0);
  const WeylSolution sol = solve_weyl(h);
  CHECK(sol.converged);
  CHECK(sol.residual <= 1e-8);
  CHECK(embedding_residual(sol.surface, h) <= 1e-8);
  CHECK(sol.surface.gauss_curvature().min() > 0.0);
}

TEST_CASE("round trip on random convex surfaces") {
  const GridPtr g = SphereGrid::make(24);
  Rng rng(57);
  for (int trial = 0; trial < 3; ++trial) {
    const auto S = random_convex_surface(g, rng, rng.uniform(0.5, 3.0), 0.06);
    check_round_trip(S, 1e-7 * std::max(1.0, S.area()));
  }
}

TEST_CASE("gauge is independent of the initial guess") {
  const GridPtr g = SphereGrid::make(24);
  const auto S = ellipsoid_surface(g, 0.95, 1.0, 1.1);
  const WeylSolution a = solve_weyl(S.metric());
  const Eigen::Matrix3d Q = Eigen::AngleAxisd(0.2, Eigen::Vector3d(1, 2, -1).normalized()).toRotationMatrix();
  const auto guess = harmonic_perturbation(g, 1.02, 0.02, 2, 1).rotated(Q).translated(Eigen::Vector3d(0.4, 0.1, -0.3));
  const WeylSolution b = solve_weyl(S.metric(), guess);
  CHECK(a.converged);
  CHECK(b.converged);
  CHECK(pointwise_distance(a.surface, b.surface) <= 1e-7);
}

TEST_CASE("gauge normalisation") {
  const GridPtr g = SphereGrid::make(16);
  Rng rng(8);
  const auto S = random_convex_surface(g, rng, 1.0, 0.08);
  const Eigen::Matrix3d Q = Eigen::AngleAxisd(1.1, rng.unit_vector()).toRotationMatrix();
  const auto moved = S.rotated(Q).translated(Eigen::Vector3d(1, -2, 3));
  const auto a = normalize_gauge(S), b = normalize_gauge(moved);
  CHECK(pointwise_distance(a, b) <= 1e-10);
  CHECK(pointwise_distance(a, normalize_gauge(a)) <= 1e-12);
  for (int i = 0; i < 3; ++i) CHECK(std::abs(integrate(a.coordinate(i), a.metric())) <= 1e-12);
}

TEST_CASE("solver errors") {
  const GridPtr g = SphereGrid::make(16);
  SUBCASE("non-convex metric") {
    const auto dumbbell = harmonic_perturbation(g, 1.0, 0.5, 2, 0);
    REQUIRE(dumbbell.gauss_curvature().min() < 0.0);
    CHECK_THROWS_AS(solve_weyl(dumbbell.metric()), NotConvex);
  }
  SUBCASE("iteration budget exhausted") {
    const auto S = ellipsoid_surface(g, 1.0, 1.0, 1.3);
    try {
      solve_weyl(S.metric(), std::nullopt, WeylOptions{1e-12, 1});
      FAIL("expected NoConvergence");
    } catch (const NoConvergence& e) {
      CHECK(e.best_residual() > 0.0);
      CHECK(std::string(e.what()).find("embedding::solve_weyl") == 0);
    }
  }
}
