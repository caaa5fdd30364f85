#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qle/embedding.hpp"
#include "qle/energy.hpp"

namespace qle {

enum class InfimumStatus { closed_form, numeric_only, unbounded_below_suspected };

const char* status_name(InfimumStatus s);

struct InfimumResult {
  InfimumStatus status = InfimumStatus::numeric_only;
  Eigen::Vector3d a_star = Eigen::Vector3d::Zero();
  double value = 0.0;
  std::optional<double> closed_form_value;
  int iterations = 0;
};

/// For future-timelike W: a* = V / sqrt(m^2 - |V|^2) (so T0* = W / sqrt(-<W, W>))
/// and value = sqrt(-<W, W>). Spacelike or past-timelike W gives
/// unbounded-below-suspected, null W numeric-only; neither carries a value.
InfimumResult closed_form_infimum(const FourVectorW& W, double C);

struct MinimizerOptions {
  std::uint64_t seed = 7;
  int max_iterations = 2000;     // per start, future-timelike W
  int diagnostic_iterations = 100;  // per start, otherwise
  double size_tol = 1e-5;
  double value_tol = 1e-8;
  double initial_step = 0.25;
};

/// Nelder-Mead descent of a -> E(a) from a0, restarted from 0, the V
/// direction and one seeded random point; the best end point wins.
InfimumResult numeric_infimum(const EnergyFunctional& energy, const Eigen::Vector3d& a0,
                              const MinimizerOptions& options = {});
InfimumResult numeric_infimum(const EmbeddedSurface& X, const SurfaceData& data,
                              const Eigen::Vector3d& a0, const MinimizerOptions& options = {});

struct SweepOptions {
  int band_limit = 24;
  int threads = 1;
  std::vector<Eigen::Vector3d> a_samples = {Eigen::Vector3d(0, 0, 0), Eigen::Vector3d(0.5, 0, 0),
                                            Eigen::Vector3d(1, 1, 0), Eigen::Vector3d(0, 0, 2)};
  WeylOptions weyl;
  MinimizerOptions minimizer;
};

struct SweepRow {
  double r = 0.0;
  std::string error;  // empty when the row succeeded
  double m_LY = 0.0;
  Eigen::Vector3d V = Eigen::Vector3d::Zero();
  CausalType causal = CausalType::null;
  double C = 0.0;
  InfimumResult numeric;
  std::optional<double> inf_closed;
  /// max over a-samples of |E(a) + <T0, W>| / sqrt(1 + |a|^2)
  double eps_max = 0.0;
  int weyl_iterations = 0;
  double weyl_residual = 0.0;
};

/// One row per radius (ascending, InvalidArgument otherwise). A failing
/// radius is recorded in its row and the sweep continues. Rows are computed
/// concurrently when threads > 1 and always returned in radius order.
std::vector<SweepRow> large_sphere_sweep(const InitialData& data, std::span<const double> radii,
                                         const SweepOptions& options = {});

/// Radii lo, 2 lo, 4 lo, ... up to and including hi when hi = lo 2^k.
std::vector<double> geometric_radii(double lo, double hi);

/// CSV with header r,m_LY,V1,V2,V3,causal,C_r,inf_numeric,inf_closed,eps_max;
/// 17 significant digits, LF endings, empty field for a missing value.
std::string sweep_csv(std::span<const SweepRow> rows);

}  // namespace qle
