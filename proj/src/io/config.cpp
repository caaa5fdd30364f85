#include <cstdlib>
#include <sstream>

#include "qle/error.hpp"
#include "qle/io.hpp"

namespace qle {

namespace {

constexpr const char* kWhere = "cli::config";

template <class T>
T value_of(const Json& j, const std::string& key) {
  try {
    return j.get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ConfigError(kWhere, "key \"" + key + "\" has the wrong type");
  }
}

Eigen::Vector3d vector_of(const Json& j, const std::string& key) {
  if (j.is_string()) return parse_vector(j.get<std::string>());
  const auto v = value_of<std::vector<double>>(j, key);
  if (v.size() != 3) throw ConfigError(kWhere, "key \"" + key + "\" needs three components");
  return {v[0], v[1], v[2]};
}

double parse_double(const std::string& s) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw ConfigError(kWhere, "not a number: \"" + s + "\"");
  }
  if (used != s.size()) throw ConfigError(kWhere, "not a number: \"" + s + "\"");
  return v;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) parts.push_back(item);
  return parts;
}

}  // namespace

Eigen::Vector3d parse_vector(const std::string& text) {
  const auto parts = split(text, ',');
  if (parts.size() != 3) throw ConfigError(kWhere, "expected x,y,z but got \"" + text + "\"");
  return {parse_double(parts[0]), parse_double(parts[1]), parse_double(parts[2])};
}

std::vector<double> parse_radii(const std::string& text) {
  const auto parts = split(text, ':');
  if (parts.size() == 3) {
    if (parts[2] != "geometric") throw ConfigError(kWhere, "only \"lo:hi:geometric\" ranges are supported");
    const double lo = parse_double(parts[0]), hi = parse_double(parts[1]);
    if (!(lo > 0.0) || !(hi >= lo)) throw ConfigError(kWhere, "radius range needs 0 < lo <= hi");
    return geometric_radii(lo, hi);
  }
  if (parts.size() != 1) throw ConfigError(kWhere, "cannot parse radii \"" + text + "\"");
  std::vector<double> r;
  for (const auto& p : split(text, ',')) r.push_back(parse_double(p));
  return r;
}

void apply_config(RunConfig& cfg, const Json& j) {
  if (!j.is_object()) throw ConfigError(kWhere, "config must be a JSON object");
  for (const auto& item : j.items()) {
    const std::string& key = item.key();
    const Json& v = item.value();
    if (key == "band_limit") cfg.band_limit = value_of<int>(v, key);
    else if (key == "family") cfg.family = value_of<std::string>(v, key);
    else if (key == "mass") cfg.mass = value_of<double>(v, key);
    else if (key == "momentum") cfg.momentum = vector_of(v, key);
    else if (key == "radius") cfg.radius = value_of<double>(v, key);
    else if (key == "a") cfg.a = vector_of(v, key);
    else if (key == "radii") cfg.radii = v.is_string() ? parse_radii(v.get<std::string>()) : value_of<std::vector<double>>(v, key);
    else if (key == "surface") cfg.surface = value_of<std::string>(v, key);
    else if (key == "metric") cfg.metric = value_of<std::string>(v, key);
    else if (key == "tol") cfg.tol = value_of<double>(v, key);
    else if (key == "max_iterations") cfg.max_iterations = value_of<int>(v, key);
    else if (key == "out") cfg.out = value_of<std::string>(v, key);
    else if (key == "csv") cfg.csv = value_of<std::string>(v, key);
    else if (key == "threads") cfg.threads = value_of<int>(v, key);
    else if (key == "seed") cfg.seed = value_of<std::uint64_t>(v, key);
    else throw ConfigError(kWhere, "unknown key \"" + key + "\"");
  }
}

RunConfig load_config(const std::filesystem::path& path) {
  RunConfig cfg;
  apply_config(cfg, read_json(path));
  return cfg;
}

void validate(const RunConfig& cfg) {
  if (cfg.band_limit < 4) throw ConfigError(kWhere, "band_limit must be >= 4");
  if (!cfg.family.empty() && cfg.family != "flat" && cfg.family != "schwarzschild" && cfg.family != "composite") {
    throw ConfigError(kWhere, "unknown family \"" + cfg.family + "\"");
  }
  if (!(cfg.tol > 0.0)) throw ConfigError(kWhere, "tol must be positive");
  if (cfg.max_iterations < 1) throw ConfigError(kWhere, "max_iterations must be >= 1");
  if (cfg.threads < 1) throw ConfigError(kWhere, "threads must be >= 1");
  if (cfg.radius && !(*cfg.radius > 0.0)) throw ConfigError(kWhere, "radius must be positive");
  for (std::size_t i = 0; i < cfg.radii.size(); ++i) {
    if (!(cfg.radii[i] > 0.0) || (i > 0 && !(cfg.radii[i] > cfg.radii[i - 1]))) {
      throw ConfigError(kWhere, "radii must be positive and ascending");
    }
  }
}

InitialData make_initial_data(const RunConfig& cfg) {
  if (cfg.family == "flat") return flat_data();
  if (cfg.family == "schwarzschild") return schwarzschild_data(cfg.mass);
  if (cfg.family == "composite") return composite_data(cfg.mass, cfg.momentum);
  throw ConfigError(kWhere, cfg.family.empty() ? "no data family given" : "unknown family \"" + cfg.family + "\"");
}

}  // namespace qle
