#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <thread>

#include <spdlog/spdlog.h>

#include "qle/error.hpp"
#include "qle/optimizer.hpp"

namespace qle {

namespace {

SweepRow sweep_row(const InitialData& data, double r, const GridPtr& grid, const SweepOptions& opt) {
  SweepRow row;
  row.r = r;
  try {
    const SurfaceData sd = coordinate_sphere(data, r, grid);
    const WeylSolution sol = solve_weyl(sd.h, std::nullopt, opt.weyl);
    row.weyl_iterations = sol.iterations;
    row.weyl_residual = sol.residual;

    const EnergyFunctional energy(sol.surface, sd);
    const FourVectorW& W = energy.W();
    row.m_LY = W.m_LY;
    row.V = W.V;
    row.causal = W.causal;
    row.C = energy.C();

    const InfimumResult closed = closed_form_infimum(W, row.C);
    row.inf_closed = closed.closed_form_value;
    row.numeric = numeric_infimum(energy, closed.closed_form_value ? closed.a_star : Eigen::Vector3d::Zero(),
                                  opt.minimizer);

    for (const Eigen::Vector3d& a : opt.a_samples) {
      const EnergyReport rep = energy.report(a);
      row.eps_max = std::max(row.eps_max, std::abs(rep.E - rep.lower) / std::sqrt(1.0 + a.squaredNorm()));
    }
    spdlog::info("optimizer::large_sphere_sweep: r = {} m_LY = {:.10g} inf = {:.10g}", r, row.m_LY,
                 row.numeric.value);
  } catch (const Error& e) {
    row.error = e.what();
    spdlog::error("optimizer::large_sphere_sweep: r = {}: {}", r, e.what());
  }
  return row;
}

void append_number(std::string& out, double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  out += buf;
}

}  // namespace

std::vector<SweepRow> large_sphere_sweep(const InitialData& data, std::span<const double> radii,
                                         const SweepOptions& options) {
  constexpr const char* where = "optimizer::large_sphere_sweep";
  if (radii.empty()) throw InvalidArgument(where, "no radii given");
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!(radii[i] > 0.0)) throw InvalidArgument(where, "radii must be positive");
    if (i > 0 && !(radii[i] > radii[i - 1])) throw InvalidArgument(where, "radii must be ascending");
  }
  if (options.threads < 1) throw InvalidArgument(where, "threads must be >= 1");

  const GridPtr grid = SphereGrid::make(options.band_limit);
  std::vector<SweepRow> rows(radii.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < radii.size(); i = next++) rows[i] = sweep_row(data, radii[i], grid, options);
  };
  const int nthreads = std::min<int>(options.threads, static_cast<int>(radii.size()));
  if (nthreads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
  }
  return rows;
}

std::vector<double> geometric_radii(double lo, double hi) {
  if (!(lo > 0.0) || !(hi >= lo)) {
    throw InvalidArgument("optimizer::geometric_radii", "need 0 < lo <= hi");
  }
  std::vector<double> r;
  for (double x = lo; x <= hi * (1.0 + 1e-12); x *= 2.0) r.push_back(x);
  return r;
}

std::string sweep_csv(std::span<const SweepRow> rows) {
  std::string out = "r,m_LY,V1,V2,V3,causal,C_r,inf_numeric,inf_closed,eps_max\n";
  for (const SweepRow& row : rows) {
    append_number(out, row.r);
    if (!row.error.empty()) {
      out += ",,,,,error,,,,\n";
      continue;
    }
    for (double v : {row.m_LY, row.V[0], row.V[1], row.V[2]}) {
      out += ',';
      append_number(out, v);
    }
    out += ',';
    out += causal_name(row.causal);
    out += ',';
    append_number(out, row.C);
    out += ',';
    append_number(out, row.numeric.value);
    out += ',';
    if (row.inf_closed) append_number(out, *row.inf_closed);
    out += ',';
    append_number(out, row.eps_max);
    out += '\n';
  }
  return out;
}

}  // namespace qle
