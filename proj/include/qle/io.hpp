#pragma once

// JSON/CSV plumbing shared by the CLI and the tests: run configuration,
// surface and metric input files, result serialisation, atomic writes.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "json.hpp"
#include "qle/embedding.hpp"
#include "qle/energy.hpp"
#include "qle/optimizer.hpp"
#include "qle/spacetime.hpp"

namespace qle {

using Json = nlohmann::ordered_json;

/// Flat run configuration. Keys of a config file map one-to-one onto the
/// fields below; unknown keys are rejected.
struct RunConfig {
  int band_limit = 24;
  std::string family;  // flat | schwarzschild | composite
  double mass = 1.0;
  Eigen::Vector3d momentum = Eigen::Vector3d::Zero();
  std::optional<double> radius;
  Eigen::Vector3d a = Eigen::Vector3d::Zero();
  std::vector<double> radii;
  std::string surface;  // surface file path
  std::string metric;   // metric file path
  double tol = 1e-9;
  int max_iterations = 50;
  std::string out;
  std::string csv;
  int threads = 1;
  std::uint64_t seed = 7;
};

/// Overwrites the fields named in `j`. Throws ConfigError on unknown keys or
/// values of the wrong type.
void apply_config(RunConfig& cfg, const Json& j);
RunConfig load_config(const std::filesystem::path& path);
/// Throws ConfigError unless the configuration is internally consistent.
void validate(const RunConfig& cfg);

/// "x,y,z" -> vector.
Eigen::Vector3d parse_vector(const std::string& text);
/// "lo:hi:geometric" (doubling) or "r1,r2,...".
std::vector<double> parse_radii(const std::string& text);

InitialData make_initial_data(const RunConfig& cfg);

/// {"band_limit": L, "X": {"kind": "round" | "ellipsoid" | "harmonic_perturbation" | "coefficients", ...}}
EmbeddedSurface surface_from_json(const Json& j, std::optional<int> band_limit = std::nullopt);
/// {"band_limit": L, "metric": {"kind": "round" | "conformal" | "from_surface" | "ambient", ...}}
InducedMetric metric_from_json(const Json& j, std::optional<int> band_limit = std::nullopt);

Json read_json(const std::filesystem::path& path);
/// Writes via a temporary file in the same directory and renames it into place.
void write_atomic(const std::filesystem::path& path, const std::string& content);

Json surface_to_json(const EmbeddedSurface& X);
Json to_json(const WeylSolution& s);
Json to_json(const EnergyReport& r);
Json to_json(const FourVectorW& W);
Json to_json(const InfimumResult& r);
Json to_json(const SweepRow& row);

/// One CSV row E,E_tilde,boost_term,m_LY,C,lower,upper (with header).
std::string energy_csv(const EnergyReport& r);

/// %.17g rendering used by every machine-readable output.
std::string format_number(double v);

}  // namespace qle
