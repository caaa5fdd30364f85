#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include <Eigen/Geometry>

#include "qle/error.hpp"
#include "qle/operators.hpp"
#include "qle/optimizer.hpp"
#include "qle/random_inputs.hpp"

using namespace qle;

namespace {

FourVectorW make_W(double m, const Eigen::Vector3d& V) { return {V, m, classify(m, V)}; }

double isotropic_radius(double R) { return 0.5 * (R - 1.0 + std::sqrt(R * R - 2.0 * R)); }

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

std::vector<std::string> fields(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

TEST_CASE("closed-form infimum") {
  const auto rest = closed_form_infimum(make_W(1.0, Eigen::Vector3d::Zero()), 0.0);
  CHECK(rest.status == InfimumStatus::closed_form);
  CHECK(rest.a_star.norm() == 0.0);
  CHECK(rest.value == doctest::Approx(1.0));

  const auto moving = closed_form_infimum(make_W(1.0, Eigen::Vector3d(-0.3, 0, 0)), 0.0);
  CHECK(moving.status == InfimumStatus::closed_form);
  CHECK(moving.value == doctest::Approx(std::sqrt(0.91)).epsilon(1e-15));
  REQUIRE(moving.closed_form_value);
  // T0* is W normalised: its time component equals m / sqrt(-<W, W>)
  CHECK(std::sqrt(1.0 + moving.a_star.squaredNorm()) == doctest::Approx(1.0 / std::sqrt(0.91)).epsilon(1e-14));
  CHECK(moving.a_star.x() < 0.0);

  const auto space = closed_form_infimum(make_W(0.2, Eigen::Vector3d(0.3, 0, 0)), 0.0);
  CHECK(space.status == InfimumStatus::unbounded_below_suspected);
  CHECK(!space.closed_form_value);
  const auto null = closed_form_infimum(make_W(0.5, Eigen::Vector3d(0, 0.5, 0)), 0.0);
  CHECK(null.status == InfimumStatus::numeric_only);
  CHECK(!null.closed_form_value);
  const auto past = closed_form_infimum(make_W(-1.0, Eigen::Vector3d::Zero()), 0.0);
  CHECK(past.status == InfimumStatus::unbounded_below_suspected);
  CHECK(std::string(status_name(InfimumStatus::numeric_only)) == "numeric-only");
}

TEST_CASE("numeric infimum of a Schwarzschild sphere") {
  const SurfaceData sd = coordinate_sphere(schwarzschild_data(1.0), isotropic_radius(4.0), SphereGrid::make(24));
  const WeylSolution sol = solve_weyl(sd.h);
  const EnergyFunctional E(sol.surface, sd);
  const auto res = numeric_infimum(E, Eigen::Vector3d(0.3, -0.2, 0.1));
  CHECK(res.status == InfimumStatus::closed_form);
  CHECK(res.a_star.norm() <= 1e-3);
  CHECK(std::abs(res.value - (4.0 - 2.0 * std::sqrt(2.0))) <= 1e-6);
  CHECK(res.iterations > 0);
}

TEST_CASE("numeric infimum of flat-slice data is zero") {
  const GridPtr g = SphereGrid::make(16);
  Rng rng(3);
  const auto S = random_convex_surface(g, rng, 1.2, 0.06);
  const SurfaceData sd = flat_slice_data(S.metric(), S.mean_curvature());
  const auto res = numeric_infimum(S, sd, rng.in_ball(1.0));
  CHECK(std::abs(res.value) <= 1e-9);
}

TEST_CASE("minimiser is equivariant under rotations of the embedding") {
  const GridPtr g = SphereGrid::make(16);
  Rng rng(23);
  for (int trial = 0; trial < 3; ++trial) {
    const auto S = random_convex_surface(g, rng, rng.uniform(0.8, 2.0), 0.05);
    const ScalarField t = random_ratio_field(g, rng, 0.6, 0.9);
    std::vector<double> H(t.size());
    for (std::size_t n = 0; n < H.size(); ++n) H[n] = t[n] * S.mean_curvature()[n];
    const SurfaceData sd = synthetic_data(S.metric(), ScalarField(g, H), random_tangent_field(S.metric(), rng, 0.05));

    const Eigen::Matrix3d Q = Eigen::AngleAxisd(rng.uniform(0.3, 2.5), rng.unit_vector()).toRotationMatrix();
    const EnergyFunctional E(S, sd), Er(S.rotated(Q), sd);
    REQUIRE(E.W().causal == CausalType::timelike_future);
    CHECK((Er.W().V - Q * E.W().V).norm() <= 1e-12);

    const auto a = numeric_infimum(E, Eigen::Vector3d::Zero());
    const auto b = numeric_infimum(Er, Eigen::Vector3d::Zero());
    CHECK((b.a_star - Q * a.a_star).norm() <= 1e-3);
    CHECK(std::abs(b.value - a.value) <= 1e-8 * std::max(1.0, std::abs(a.value)));
    // the infimum never exceeds the rest-frame energy nor undercuts the closed form
    CHECK(a.value <= E.energy(Eigen::Vector3d::Zero()) + 1e-12);
    CHECK(a.value >= *a.closed_form_value - 1e-9);
  }
}

TEST_CASE("spacelike W gets the short diagnostic run") {
  const GridPtr g = SphereGrid::make(12);
  const auto S = round_surface(g, 1.0);
  // |H| = k0 so m_LY = 0, and a nonzero V makes W spacelike
  const TangentField V = gradient(ScalarField(g, [&] {
                                    std::vector<double> f(g->size());
                                    for (std::size_t n = 0; n < f.size(); ++n) f[n] = 0.3 * g->unit_position(n).z();
                                    return f;
                                  }()),
                                  S.metric());
  const SurfaceData sd = synthetic_data(S.metric(), S.mean_curvature(), V);
  const EnergyFunctional E(S, sd);
  REQUIRE(E.W().causal == CausalType::spacelike);
  MinimizerOptions opt;
  const auto res = numeric_infimum(E, Eigen::Vector3d::Zero(), opt);
  CHECK(res.status == InfimumStatus::unbounded_below_suspected);
  CHECK(res.iterations <= 4 * opt.diagnostic_iterations);
  CHECK(res.value < 0.0);
}

TEST_CASE("geometric radii") {
  CHECK(geometric_radii(25.0, 200.0) == std::vector<double>{25.0, 50.0, 100.0, 200.0});
  CHECK(geometric_radii(3.0, 3.0) == std::vector<double>{3.0});
  CHECK(geometric_radii(1.0, 7.0) == std::vector<double>{1.0, 2.0, 4.0});
  CHECK_THROWS_AS(geometric_radii(0.0, 1.0), InvalidArgument);
  CHECK_THROWS_AS(geometric_radii(2.0, 1.0), InvalidArgument);
}

TEST_CASE("sweep argument checks") {
  const auto data = flat_data();
  CHECK_THROWS_AS(large_sphere_sweep(data, std::vector<double>{}), InvalidArgument);
  CHECK_THROWS_AS(large_sphere_sweep(data, std::vector<double>{4.0, 2.0}), InvalidArgument);
  CHECK_THROWS_AS(large_sphere_sweep(data, std::vector<double>{-1.0, 2.0}), InvalidArgument);
  SweepOptions bad;
  bad.threads = 0;
  CHECK_THROWS_AS(large_sphere_sweep(data, std::vector<double>{1.0}, bad), InvalidArgument);
}

TEST_CASE("sweep of flat data") {
  SweepOptions opt;
  opt.band_limit = 12;
  const std::vector<double> radii{1.0, 2.0, 4.0};
  const auto rows = large_sphere_sweep(flat_data(), radii, opt);
  REQUIRE(rows.size() == 3);
  for (const auto& row : rows) {
    CHECK(row.error.empty());
    CHECK(std::abs(row.m_LY) <= 1e-10);
    CHECK(row.V.norm() <= 1e-12);
    CHECK(row.C <= 1e-20);
    CHECK(std::abs(row.numeric.value) <= 1e-9);
    CHECK(row.eps_max <= 1e-10);
  }
}

TEST_CASE("sweep rows are independent of the thread count") {
  SweepOptions one;
  one.band_limit = 12;
  SweepOptions many = one;
  many.threads = 3;
  const auto data = composite_data(1.0, Eigen::Vector3d(0.3, 0.0, 0.0));
  const std::vector<double> radii{0.2, 5.0, 10.0, 20.0};
  const auto a = large_sphere_sweep(data, radii, one);
  const auto b = large_sphere_sweep(data, radii, many);
  CHECK(sweep_csv(a) == sweep_csv(b));
  REQUIRE(a.size() == 4);
  CHECK(!a[0].error.empty());
  for (std::size_t i = 1; i < a.size(); ++i) {
    CHECK(a[i].error.empty());
    CHECK(a[i].r == radii[i]);
    CHECK(a[i].causal == CausalType::timelike_future);
    REQUIRE(a[i].inf_closed);
    // the closed form is a lower bound whose gap is controlled by C
    CHECK(a[i].numeric.value >= *a[i].inf_closed - 1e-9);
    CHECK(a[i].numeric.value <= *a[i].inf_closed + a[i].C * a[i].m_LY / *a[i].inf_closed + 1e-6);
    if (i > 1) CHECK(a[i].eps_max <= 1.2 * a[i - 1].eps_max);
  }
}

TEST_CASE("sweep CSV layout") {
  SweepRow ok;
  ok.r = 25.0;
  ok.m_LY = 1.0 / 3.0;
  ok.V = Eigen::Vector3d(-0.3, 0.0, 1e-20);
  ok.causal = CausalType::timelike_future;
  ok.C = 0.125;
  ok.numeric.value = 0.9;
  ok.eps_max = 2.5e-3;
  SweepRow open = ok;
  open.r = 50.0;
  open.inf_closed.reset();
  ok.inf_closed = 0.95;
  SweepRow bad;
  bad.r = 100.0;
  bad.error = "spacetime::coordinate_sphere: not spacelike";

  const std::vector<SweepRow> rows{ok, open, bad};
  const auto out = lines(sweep_csv(rows));
  REQUIRE(out.size() == 4);
  CHECK(out[0] == "r,m_LY,V1,V2,V3,causal,C_r,inf_numeric,inf_closed,eps_max");
  for (const auto& line : out) CHECK(fields(line).size() == 10);
  const auto f = fields(out[1]);
  CHECK(f[1] == "0.33333333333333331");
  CHECK(std::stod(f[1]) == ok.m_LY);
  CHECK(f[4] == "9.9999999999999995e-21");
  CHECK(f[5] == "timelike-future");
  CHECK(f[8] == "0.94999999999999996");
  CHECK(fields(out[2])[8].empty());
  CHECK(fields(out[3])[5] == "error");
  CHECK(fields(out[3])[1].empty());
  CHECK(sweep_csv(rows).find('\r') == std::string::npos);
}
