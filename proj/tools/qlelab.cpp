// qlelab: command-line front end for the quasilocal energy library.
//
//   qlelab embed    --metric FILE | --surface FILE | --family F --radius R
//   qlelab energy   --family F --radius R --a x,y,z      (or --surface FILE)
//   qlelab infimum  --family F --radius R [--a x,y,z]
//   qlelab sweep    --family F --radii 25:200:geometric --out FILE.csv
//   qlelab verify   [--seed N]
//
// Exit codes: 0 ok, 1 verify failure, 2 configuration / invalid argument,
// 3 numerical-domain error, 4 no convergence.

#include <cstdlib>
#include <iostream>
#include <string>

#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "CLI11.hpp"
#include "qle/embedding.hpp"
#include "qle/energy.hpp"
#include "qle/error.hpp"
#include "qle/io.hpp"
#include "qle/optimizer.hpp"
#include "qle/simd.hpp"
#include "qle/verify.hpp"

namespace {

using namespace qle;

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_argument:
    case ErrorKind::config:
      return 2;
    case ErrorKind::no_convergence:
      return 4;
    default:
      return 3;
  }
}

void setup_logging() {
  auto logger = spdlog::stderr_color_st("qlelab");
  spdlog::set_default_logger(logger);
  spdlog::set_pattern("[%l] %v");
  const char* env = std::getenv("QLELAB_LOG");
  const std::string level = env ? env : "error";
  if (level == "debug") spdlog::set_level(spdlog::level::debug);
  else if (level == "info") spdlog::set_level(spdlog::level::info);
  else spdlog::set_level(spdlog::level::err);
}

void emit(const RunConfig& cfg, const Json& j) {
  if (!cfg.out.empty()) write_atomic(cfg.out, j.dump(2) + "\n");
}

// The surface X and its data for energy / infimum.
struct Problem {
  EmbeddedSurface X;
  SurfaceData data;
};

Problem make_problem(const RunConfig& cfg) {
  if (!cfg.family.empty()) {
    if (!cfg.radius) throw ConfigError("cli::run", "--radius is required with --family");
    const GridPtr grid = SphereGrid::make(cfg.band_limit);
    SurfaceData sd = coordinate_sphere(make_initial_data(cfg), *cfg.radius, grid);
    std::optional<EmbeddedSurface> guess;
    if (!cfg.surface.empty()) guess = surface_from_json(read_json(cfg.surface), cfg.band_limit);
    WeylSolution sol = solve_weyl(sd.h, guess, WeylOptions{cfg.tol, cfg.max_iterations});
    spdlog::info("cli::run: embedded S_r in {} iterations, residual {:.3e}", sol.iterations, sol.residual);
    return {std::move(sol.surface), std::move(sd)};
  }
  if (!cfg.surface.empty()) {
    EmbeddedSurface X = surface_from_json(read_json(cfg.surface));
    SurfaceData sd = flat_slice_data(X.metric(), X.mean_curvature());
    return {std::move(X), std::move(sd)};
  }
  throw ConfigError("cli::run", "need --family/--radius or --surface");
}

int cmd_embed(const RunConfig& cfg) {
  std::optional<InducedMetric> h;
  if (!cfg.metric.empty()) {
    h = metric_from_json(read_json(cfg.metric));
  } else if (!cfg.family.empty()) {
    if (!cfg.radius) throw ConfigError("cli::embed", "--radius is required with --family");
    h = coordinate_sphere(make_initial_data(cfg), *cfg.radius, SphereGrid::make(cfg.band_limit)).h;
  } else if (!cfg.surface.empty()) {
    h = surface_from_json(read_json(cfg.surface)).metric();
  } else {
    throw ConfigError("cli::embed", "need --metric, --surface or --family/--radius");
  }
  const WeylSolution sol = solve_weyl(*h, std::nullopt, WeylOptions{cfg.tol, cfg.max_iterations});
  std::cout << "embedding converged in " << sol.iterations << " iterations, residual "
            << format_number(sol.residual) << ", area " << format_number(sol.surface.area()) << "\n";
  emit(cfg, to_json(sol));
  return 0;
}

int cmd_energy(const RunConfig& cfg) {
  const Problem p = make_problem(cfg);
  const BoostVector T0{cfg.a};
  const EnergyReport rep = wang_yau_energy(p.X, p.data, T0);
  const FourVectorW W = momentum_four_vector(p.X, p.data);
  std::cout << "E = " << format_number(rep.E) << "  (m_LY = " << format_number(rep.m_LY) << ", bounds ["
            << format_number(rep.lower) << ", " << format_number(rep.upper) << "])\n";
  Json j;
  j["a"] = {cfg.a[0], cfg.a[1], cfg.a[2]};
  if (cfg.radius && !cfg.family.empty()) j["r"] = *cfg.radius;
  j["report"] = to_json(rep);
  j["W"] = to_json(W);
  emit(cfg, j);
  if (!cfg.csv.empty()) write_atomic(cfg.csv, energy_csv(rep));
  return 0;
}

int cmd_infimum(const RunConfig& cfg) {
  const Problem p = make_problem(cfg);
  const EnergyFunctional E(p.X, p.data);
  MinimizerOptions opt;
  opt.seed = cfg.seed;
  const InfimumResult res = numeric_infimum(E, cfg.a, opt);
  std::cout << "inf E = " << format_number(res.value) << " (" << status_name(res.status) << ")";
  if (res.closed_form_value) std::cout << ", closed form " << format_number(*res.closed_form_value);
  std::cout << "\n";
  Json j = to_json(res);
  j["W"] = to_json(E.W());
  j["C"] = E.C();
  emit(cfg, j);
  return 0;
}

int cmd_sweep(const RunConfig& cfg) {
  if (cfg.radii.empty()) throw ConfigError("cli::sweep", "--radii is required");
  SweepOptions opt;
  opt.band_limit = cfg.band_limit;
  opt.threads = cfg.threads;
  opt.weyl = WeylOptions{cfg.tol, cfg.max_iterations};
  opt.minimizer.seed = cfg.seed;
  const auto rows = large_sphere_sweep(make_initial_data(cfg), cfg.radii, opt);
  const std::string csv = sweep_csv(rows);
  std::cout << csv;
  if (!cfg.out.empty()) write_atomic(cfg.out, csv);
  if (!cfg.csv.empty()) write_atomic(cfg.csv, csv);
  for (const auto& row : rows) {
    if (!row.error.empty()) return 3;
  }
  return 0;
}

int cmd_verify(const RunConfig& cfg) {
  const auto checks = run_verify(cfg.seed, cfg.band_limit);
  int failed = 0;
  Json j = Json::array();
  for (const auto& c : checks) {
    std::cout << (c.passed ? "PASS " : "FAIL ") << c.name << ": " << c.detail << "\n";
    failed += c.passed ? 0 : 1;
    j.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  }
  std::cout << (checks.size() - failed) << "/" << checks.size() << " checks passed (kernels: "
            << simd::isa_name(simd::kernels().isa) << ")\n";
  emit(cfg, j);
  return failed == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  setup_logging();

  CLI::App app{"Quasilocal energy of 2-surfaces in asymptotically flat initial data"};
  app.require_subcommand(1);

  std::string config_path, family, momentum, a, radii;
  double mass = 0.0, radius = 0.0, tol = 0.0;
  int band_limit = 0, threads = 0;
  std::uint64_t seed = 0;
  std::string out, csv, surface, metric;

  app.fallthrough();  // subcommands inherit this, so flags may follow the subcommand
  std::vector<CLI::App*> subs;
  for (const char* name : {"embed", "energy", "infimum", "sweep", "verify"}) {
    subs.push_back(app.add_subcommand(name));
  }
  subs[0]->description("isometrically embed a metric on S^2 into R^3");
  subs[1]->description("quasilocal energy E(S, X, T0) for one observer");
  subs[2]->description("minimise E over observers T0");
  subs[3]->description("large-sphere sweep over coordinate radii");
  subs[4]->description("run the invariant suite");

  auto* o_config = app.add_option("--config", config_path, "flat JSON config file");
  auto* o_out = app.add_option("--out", out, "output path (JSON, CSV for sweep)");
  auto* o_threads = app.add_option("--threads", threads, "worker threads for sweeps");
  auto* o_seed = app.add_option("--seed", seed, "seed for randomised steps");
  auto* o_family = app.add_option("--family", family, "flat | schwarzschild | composite");
  auto* o_mass = app.add_option("--mass", mass, "mass parameter m");
  auto* o_momentum = app.add_option("--momentum", momentum, "Bowen-York momentum px,py,pz");
  auto* o_radius = app.add_option("--radius", radius, "coordinate radius of S_r");
  auto* o_a = app.add_option("--a", a, "boost vector ax,ay,az");
  auto* o_radii = app.add_option("--radii", radii, "lo:hi:geometric or r1,r2,...");
  auto* o_surface = app.add_option("--surface", surface, "surface JSON file");
  auto* o_metric = app.add_option("--metric", metric, "metric JSON file");
  auto* o_band = app.add_option("--band-limit", band_limit, "spherical-harmonic band limit L");
  auto* o_tol = app.add_option("--tol", tol, "embedding tolerance");
  auto* o_csv = app.add_option("--csv", csv, "CSV output path");
  (void)o_config;

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    RunConfig cfg;
    if (!config_path.empty()) cfg = load_config(config_path);
    if (o_out->count()) cfg.out = out;
    if (o_threads->count()) cfg.threads = threads;
    if (o_seed->count()) cfg.seed = seed;
    if (o_family->count()) cfg.family = family;
    if (o_mass->count()) cfg.mass = mass;
    if (o_momentum->count()) cfg.momentum = parse_vector(momentum);
    if (o_radius->count()) cfg.radius = radius;
    if (o_a->count()) cfg.a = parse_vector(a);
    if (o_radii->count()) cfg.radii = parse_radii(radii);
    if (o_surface->count()) cfg.surface = surface;
    if (o_metric->count()) cfg.metric = metric;
    if (o_band->count()) cfg.band_limit = band_limit;
    if (o_tol->count()) cfg.tol = tol;
    if (o_csv->count()) cfg.csv = csv;
    validate(cfg);

    if (subs[0]->parsed()) return cmd_embed(cfg);
    if (subs[1]->parsed()) return cmd_energy(cfg);
    if (subs[2]->parsed()) return cmd_infimum(cfg);
    if (subs[3]->parsed()) return cmd_sweep(cfg);
    return cmd_verify(cfg);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
