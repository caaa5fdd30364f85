// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "qle/embedding.hpp"
#include "qle/energy.hpp"
#include "qle/operators.hpp"
#include "qle/optimizer.hpp"
#include "qle/random_inputs.hpp"
#include "qle/spacetime.hpp"

using namespace qle;

namespace {

constexpr int kL = 24;

struct Outcome {
  bool passed;
  std::string detail;
};

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

std::string fmt(const char* f, double a, double b) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

std::string fmt(const char* f, double a, double b, double c) {
  char buf[200];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

// Coordinate radius of the Schwarzschild (m = 1) sphere with areal radius R.
double isotropic_radius(double R) { return 0.5 * (R - 1.0 + std::sqrt(R * R - 2.0 * R)); }

struct Sphere {
  EmbeddedSurface X;
  SurfaceData data;
};

Sphere embedded(const InitialData& d, double r) {
  SurfaceData sd = coordinate_sphere(d, r, SphereGrid::make(kL));
  WeylSolution sol = solve_weyl(sd.h);
  return {std::move(sol.surface), std::move(sd)};
}

const Sphere& schwarzschild_r4() {
  static const Sphere s = embedded(schwarzschild_data(1.0), isotropic_radius(4.0));
  return s;
}

const double kMBY = 4.0 - 2.0 * std::sqrt(2.0);

// Perturbed convex surface with |H| = t k0, 0.5 <= t <= 2 (or t = 1), and a
// random connection form.
Sphere random_synthetic(Rng& rng, bool equal_H) {
  const GridPtr g = SphereGrid::make(kL);
  EmbeddedSurface S = random_convex_surface(g, rng, rng.uniform(0.5, 3.0), 0.05);
  std::vector<double> H(g->size());
  const ScalarField t = random_ratio_field(g, rng, 0.5, 2.0);
  for (std::size_t n = 0; n < H.size(); ++n) H[n] = (equal_H ? 1.0 : t[n]) * S.mean_curvature()[n];
  SurfaceData sd = synthetic_data(S.metric(), ScalarField(g, std::move(H)),
                                  random_tangent_field(S.metric(), rng, rng.uniform(0.1, 1.0)));
  return {std::move(S), std::move(sd)};
}

std::vector<SweepRow> sweep(const InitialData& data, double& seconds) {
  const auto start = std::chrono::steady_clock::now();
  const auto rows = large_sphere_sweep(data, geometric_radii(25.0, 200.0));
  seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rows;
}

const std::vector<SweepRow>& composite_rows(double* seconds = nullptr) {
  static double t = 0.0;
  static const auto rows = sweep(composite_data(1.0, Eigen::Vector3d(0.3, 0.0, 0.0)), t);
  if (seconds) *seconds = t;
  return rows;
}

const SweepRow* row_at(const std::vector<SweepRow>& rows, double r) {
  for (const auto& row : rows) {
    if (row.r == r) return row.error.empty() ? &row : nullptr;
  }
  return nullptr;
}

Outcome c1_brown_york_value() {
  const Sphere& s = schwarzschild_r4();
  const double ly = liu_yau_mass(s.X, s.data), by = brown_york_mass(s.X, s.data);
  const double err = std::max(std::abs(ly - kMBY), std::abs(by - kMBY));
  return {err <= 1e-6, fmt("m_LY = %.10f, m_BY = %.10f, max error %.2e (tol 1e-6)", ly, by, err)};
}

Outcome c2_infimum_at_rest() {
  const Sphere& s = schwarzschild_r4();
  const EnergyFunctional E(s.X, s.data);
  const InfimumResult inf = numeric_infimum(E, Eigen::Vector3d(0.3, -0.2, 0.1));
  const double rest = wang_yau_energy(s.X, s.data, BoostVector{}).E;
  const bool ok = inf.a_star.norm() <= 1e-3 && std::abs(inf.value - kMBY) <= 1e-6 && std::abs(rest - kMBY) <= 1e-9;
  return {ok, fmt("|a*| = %.2e, inf - m_BY = %.2e, E(rest) - m_BY = %.2e", inf.a_star.norm(), inf.value - kMBY,
                  rest - kMBY)};
}

Outcome c3_sandwich() {
  Rng rng(301);
  int violations = 0;
  double worst = -1e300;
  for (int trial = 0; trial < 200; ++trial) {
    const Sphere s = random_synthetic(rng, false);
    const EnergyFunctional E(s.X, s.data);
    const EnergyReport rep = E.report(rng.in_ball(3.0));
    const double scale = std::max(1.0, std::abs(rep.E));
    const double excess = std::max(rep.lower - rep.E, rep.E - rep.upper) / scale;
    worst = std::max(worst, excess);
    if (excess > 1e-9) ++violations;
  }
  return {violations == 0, fmt("%.0f violations in 200 trials, largest (E - upper, lower - E) relative to max(1, |E|): %.2e", violations, worst)};
}

Outcome c4_phi_maximum() {
  Rng rng(401);
  int bad_max = 0, bad_sign = 0;
  for (int i = 0; i < 10000; ++i) {
    const double rho = 5.0 * (1.0 - rng.unit());
    const double f = rng.uniform(-rho, rho);
    const double t = 10.0 * (1.0 - rng.unit());
    if (phi({t, f, rho}) > phi({1.0, f, rho}) + 1e-12) ++bad_max;
    if (f != 0.0) {
      const double d = dphi_dt({t, f, rho});
      if ((t < 1.0 && d < -1e-12) || (t > 1.0 && d > 1e-12)) ++bad_sign;
    }
  }
  return {bad_max == 0 && bad_sign == 0,
          fmt("10000 samples: %.0f above Phi(1), %.0f derivative sign violations", bad_max, bad_sign)};
}

Outcome c5_gradient() {
  Rng rng(501);
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const Sphere s = random_synthetic(rng, false);
    const EnergyFunctional E(s.X, s.data);
    const double h = 1e-4;
    Eigen::Vector3d grad;
    for (int i = 0; i < 3; ++i) {
      const Eigen::Vector3d e = h * Eigen::Vector3d::Unit(i);
      grad[i] = (E.energy(e) - E.energy(-e)) / (2.0 * h);
    }
    worst = std::max(worst, (grad + E.W().V).norm() / E.W().V.norm());
  }
  return {worst <= 1e-4, fmt("worst relative error of grad E(0) against -V over 20 configurations: %.2e", worst)};
}

Outcome c6_equality_case() {
  Rng rng(601);
  const Sphere s = random_synthetic(rng, true);
  const EnergyFunctional E(s.X, s.data);
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    const Eigen::Vector3d a = rng.in_ball(3.0);
    worst = std::max(worst, std::abs(E.energy(a) + a.dot(E.W().V)));
  }
  return {worst <= 1e-9, fmt("max |E + <a, V>| over 20 observers: %.2e (|V| = %.3f)", worst, E.W().V.norm())};
}

Outcome c7_adm() {
  const auto s = schwarzschild_data(1.0);
  const double e1 = adm_energy(s, 250.0) - 1.0, e2 = adm_energy(s, 500.0) - 1.0, e3 = adm_energy(s, 1000.0) - 1.0;
  const double q1 = e2 / e1, q2 = e3 / e2;
  const Eigen::Vector3d P(0.3, 0.0, 0.0);
  const auto c = composite_data(1.0, P);
  const double dp = std::max((adm_momentum(c, 100.0) - P).norm(), (adm_momentum(c, 400.0) - P).norm());
  const bool ok = std::abs(q1 - 0.5) <= 0.05 && std::abs(q2 - 0.5) <= 0.05 && std::abs(e3) <= 2e-3 && dp <= 1e-10;
  return {ok, fmt("error ratios %.4f, %.4f; error at r=1000 %.2e", q1, q2, e3) + fmt("; momentum error %.2e", dp)};
}

Outcome c8_composite_W() {
  const auto& rows = composite_rows();
  double prev = 1e300, final_err = 0.0;
  bool monotone = true;
  std::string detail;
  for (double r : {50.0, 100.0, 200.0}) {
    const SweepRow* row = row_at(rows, r);
    if (!row) return {false, fmt("sweep failed at r = %.0f", r)};
    const double err = std::max({std::abs(row->m_LY - 1.0), std::abs(row->V[0] + 0.3), std::abs(row->V[1]),
                                 std::abs(row->V[2])});
    monotone = monotone && err < prev;
    prev = final_err = err;
    detail += fmt("r=%.0f: %.2e; ", r, err);
  }
  return {monotone && final_err <= 0.02, "componentwise error " + detail + "tol 0.02 at r=200"};
}

Outcome c9_infimum_headline() {
  double seconds = 0.0;
  const auto& rows = composite_rows(&seconds);
  const SweepRow* row = row_at(rows, 200.0);
  if (!row || !row->inf_closed) return {false, "no closed-form infimum at r = 200"};
  const double target = std::sqrt(0.91);
  const double rel = std::abs(row->numeric.value - target) / target;
  const double lo = *row->inf_closed;
  const double hi = lo + row->C * row->m_LY / lo;
  const bool band = row->numeric.value >= lo - 1e-9 && row->numeric.value <= hi + 1e-9;
  const bool ok = rel <= 0.05 && band && seconds <= 600.0;
  return {ok, fmt("inf = %.7f (%.2f%% from sqrt(0.91)), band [%.7f, ", row->numeric.value, 100.0 * rel, lo) +
                  fmt("%.7f], sweep %.1f s", hi, seconds)};
}

Outcome c10_C_decay() {
  double seconds = 0.0;
  const auto rows = sweep(schwarzschild_data(1.0), seconds);
  double worst = 0.0;
  for (double r : {25.0, 50.0, 100.0}) {
    const SweepRow *a = row_at(rows, r), *b = row_at(rows, 2.0 * r);
    if (!a || !b) return {false, fmt("sweep failed near r = %.0f", r)};
    worst = std::max(worst, b->C / a->C);
  }
  return {worst <= 0.75, fmt("largest C_2r / C_r = %.4f (tol 0.75)", worst)};
}

Outcome c11_weyl_round_trip() {
  const auto S = ellipsoid_surface(SphereGrid::make(kL), 1.0, 1.0, 1.1);
  const WeylSolution sol = solve_weyl(S.metric());
  const double darea = std::abs(sol.surface.area() - S.area());
  const double dk = std::abs(integrate(sol.surface.mean_curvature(), sol.surface.metric()) -
                             integrate(S.mean_curvature(), S.metric()));
  const bool ok = sol.converged && sol.residual <= 1e-8 && darea <= 1e-7 && dk <= 1e-7;
  return {ok, fmt("residual %.2e, area error %.2e, total mean curvature error %.2e", sol.residual, darea, dk)};
}

Outcome c12_flat_zero() {
  const Sphere s = embedded(flat_data(), 10.0);
  const EnergyFunctional E(s.X, s.data);
  Rng rng(1201);
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) worst = std::max(worst, std::abs(E.energy(rng.in_ball(3.0))));
  return {worst <= 1e-8, fmt("max |E| over 20 observers: %.2e", worst)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"Schwarzschild Brown-York value", c1_brown_york_value},
      {"infimum attained at rest on time-symmetric data", c2_infimum_at_rest},
      {"sandwich estimate", c3_sandwich},
      {"Phi maximal at t = 1", c4_phi_maximum},
      {"gradient at the origin is -V", c5_gradient},
      {"equality case |H| = k0", c6_equality_case},
      {"ADM energy and momentum", c7_adm},
      {"composite W_r -> (1, -P)", c8_composite_W},
      {"composite infimum -> sqrt(m^2 - |P|^2)", c9_infimum_headline},
      {"C_r decays", c10_C_decay},
      {"Weyl round trip of the ellipsoid", c11_weyl_round_trip},
      {"flat data carry no energy", c12_flat_zero},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s %2zu %s: %s [%.1f s]\n", o.passed ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str(), s);
    std::fflush(stdout);
    failed += o.passed ? 0 : 1;
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
