#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <system_error>

#include <unistd.h>

#include "qle/error.hpp"
#include "qle/io.hpp"

namespace qle {

namespace {

constexpr const char* kAxes = "xyz";

template <class T>
T get(const Json& j, const char* key, const char* where) {
  if (!j.contains(key)) throw ConfigError(where, std::string("missing key \"") + key + "\"");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ConfigError(where, std::string("key \"") + key + "\" has the wrong type");
  }
}

void only_keys(const Json& j, std::initializer_list<const char*> allowed, const char* where) {
  if (!j.is_object()) throw ConfigError(where, "expected a JSON object");
  for (const auto& item : j.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || item.key() == a;
    if (!ok) throw ConfigError(where, "unknown key \"" + item.key() + "\"");
  }
}

std::vector<double> coefficient_list(const Json& j, const char* key, const GridPtr& grid, const char* where) {
  auto c = get<std::vector<double>>(j, key, where);
  if (c.size() > grid->n_coeffs()) {
    throw ConfigError(where, std::string("\"") + key + "\" has more coefficients than the band limit allows");
  }
  c.resize(grid->n_coeffs(), 0.0);
  return c;
}

int band_limit_of(const Json& j, std::optional<int> band_limit, const char* where) {
  if (band_limit) return *band_limit;
  if (j.contains("band_limit")) return get<int>(j, "band_limit", where);
  return 24;
}

EmbeddedSurface surface_spec(const Json& x, const GridPtr& grid) {
  constexpr const char* where = "cli::surface_file";
  const auto kind = get<std::string>(x, "kind", where);
  if (kind == "round") {
    only_keys(x, {"kind", "radius"}, where);
    return round_surface(grid, get<double>(x, "radius", where));
  }
  if (kind == "ellipsoid") {
    only_keys(x, {"kind", "axes"}, where);
    const auto ax = get<std::vector<double>>(x, "axes", where);
    if (ax.size() != 3) throw ConfigError(where, "\"axes\" needs three entries");
    return ellipsoid_surface(grid, ax[0], ax[1], ax[2]);
  }
  if (kind == "harmonic_perturbation") {
    only_keys(x, {"kind", "radius", "eps", "l", "m"}, where);
    return harmonic_perturbation(grid, get<double>(x, "radius", where), get<double>(x, "eps", where),
                                 get<int>(x, "l", where), get<int>(x, "m", where));
  }
  if (kind == "coefficients") {
    only_keys(x, {"kind", "x", "y", "z"}, where);
    return EmbeddedSurface(grid, {coefficient_list(x, "x", grid, where), coefficient_list(x, "y", grid, where),
                                  coefficient_list(x, "z", grid, where)});
  }
  throw ConfigError(where, "unknown surface kind \"" + kind + "\"");
}

}  // namespace

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

EmbeddedSurface surface_from_json(const Json& j, std::optional<int> band_limit) {
  constexpr const char* where = "cli::surface_file";
  only_keys(j, {"band_limit", "X"}, where);
  const GridPtr grid = SphereGrid::make(band_limit_of(j, band_limit, where));
  if (!j.contains("X")) throw ConfigError(where, "missing key \"X\"");
  return surface_spec(j.at("X"), grid);
}

InducedMetric metric_from_json(const Json& j, std::optional<int> band_limit) {
  constexpr const char* where = "cli::metric_file";
  only_keys(j, {"band_limit", "metric"}, where);
  const GridPtr grid = SphereGrid::make(band_limit_of(j, band_limit, where));
  if (!j.contains("metric")) throw ConfigError(where, "missing key \"metric\"");
  const Json& m = j.at("metric");
  const auto kind = get<std::string>(m, "kind", where);
  if (kind == "round") {
    only_keys(m, {"kind", "radius"}, where);
    return InducedMetric::round(grid, get<double>(m, "radius", where));
  }
  if (kind == "conformal") {
    // h = R^2 (1 + u) dOmega^2 with u = eps Y_lm or given by coefficients
    only_keys(m, {"kind", "radius", "eps", "l", "m", "coefficients"}, where);
    const double R = get<double>(m, "radius", where);
    std::vector<double> u(grid->size(), 0.0);
    if (m.contains("coefficients")) {
      u = grid->synthesize(coefficient_list(m, "coefficients", grid, where));
    } else {
      const double eps = get<double>(m, "eps", where);
      const int l = get<int>(m, "l", where), mm = get<int>(m, "m", where);
      if (l < 0 || l > grid->band_limit() || std::abs(mm) > l) throw ConfigError(where, "invalid (l, m)");
      for (std::size_t n = 0; n < u.size(); ++n) u[n] = eps * grid->basis(l, mm, n);
    }
    std::vector<Sym2> h(grid->size());
    for (std::size_t n = 0; n < h.size(); ++n) h[n] = Sym2{R * R * (1.0 + u[n]), 0.0, R * R * (1.0 + u[n])};
    return InducedMetric(grid, std::move(h));
  }
  if (kind == "from_surface") {
    only_keys(m, {"kind", "X"}, where);
    if (!m.contains("X")) throw ConfigError(where, "missing key \"X\"");
    return surface_spec(m.at("X"), grid).metric();
  }
  if (kind == "ambient") {
    only_keys(m, {"kind", "components"}, where);
    const Json& c = m.at("components");
    only_keys(c, {"xx", "xy", "xz", "yy", "yz", "zz"}, where);
    static const char* names[6] = {"xx", "xy", "xz", "yy", "yz", "zz"};
    static constexpr int row[6] = {0, 0, 0, 1, 1, 2}, col[6] = {0, 1, 2, 1, 2, 2};
    std::vector<Eigen::Matrix3d> T(grid->size(), Eigen::Matrix3d::Zero());
    for (int q = 0; q < 6; ++q) {
      if (!c.contains(names[q])) continue;
      const auto v = grid->synthesize(coefficient_list(c, names[q], grid, where));
      for (std::size_t n = 0; n < T.size(); ++n) {
        T[n](row[q], col[q]) = v[n];
        T[n](col[q], row[q]) = v[n];
      }
    }
    return InducedMetric::from_ambient(grid, T);
  }
  throw ConfigError(where, "unknown metric kind \"" + kind + "\"");
}

Json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cli::read_json", "cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("cli::read_json", path.string() + ": " + e.what());
  }
}

void write_atomic(const std::filesystem::path& path, const std::string& content) {
  const std::filesystem::path tmp = path.string() + ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("cli::write", "cannot open " + tmp.string() + " for writing");
    out << content;
    out.flush();
    if (!out) throw ConfigError("cli::write", "failed writing " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw ConfigError("cli::write", "cannot move output into " + path.string() + ": " + ec.message());
  }
}

Json surface_to_json(const EmbeddedSurface& X) {
  Json x;
  x["kind"] = "coefficients";
  for (int i = 0; i < 3; ++i) x[std::string(1, kAxes[i])] = X.coefficients()[i];
  Json j;
  j["band_limit"] = X.grid().band_limit();
  j["X"] = std::move(x);
  return j;
}

Json to_json(const WeylSolution& s) {
  Json j;
  j["converged"] = s.converged;
  j["iterations"] = s.iterations;
  j["residual"] = s.residual;
  j["area"] = s.surface.area();
  j["k0_min"] = s.surface.mean_curvature().min();
  j["k0_max"] = s.surface.mean_curvature().max();
  j["surface"] = surface_to_json(s.surface);
  return j;
}

Json to_json(const EnergyReport& r) {
  Json j;
  j["E"] = r.E;
  j["E_tilde"] = r.E_tilde;
  j["boost_term"] = r.boost_term;
  j["m_LY"] = r.m_LY;
  j["C"] = r.C;
  j["lower"] = r.lower;
  j["upper"] = r.upper;
  return j;
}

Json to_json(const FourVectorW& W) {
  Json j;
  j["m_LY"] = W.m_LY;
  j["V"] = {W.V[0], W.V[1], W.V[2]};
  j["causal"] = causal_name(W.causal);
  return j;
}

Json to_json(const InfimumResult& r) {
  Json j;
  j["status"] = status_name(r.status);
  j["a_star"] = {r.a_star[0], r.a_star[1], r.a_star[2]};
  j["value"] = std::isfinite(r.value) ? Json(r.value) : Json(nullptr);
  j["closed_form_value"] = r.closed_form_value ? Json(*r.closed_form_value) : Json(nullptr);
  j["iterations"] = r.iterations;
  return j;
}

Json to_json(const SweepRow& row) {
  Json j;
  j["r"] = row.r;
  if (!row.error.empty()) {
    j["error"] = row.error;
    return j;
  }
  j["m_LY"] = row.m_LY;
  j["V"] = {row.V[0], row.V[1], row.V[2]};
  j["causal"] = causal_name(row.causal);
  j["C_r"] = row.C;
  j["numeric"] = to_json(row.numeric);
  j["inf_closed"] = row.inf_closed ? Json(*row.inf_closed) : Json(nullptr);
  j["eps_max"] = row.eps_max;
  j["weyl_iterations"] = row.weyl_iterations;
  j["weyl_residual"] = row.weyl_residual;
  return j;
}

std::string energy_csv(const EnergyReport& r) {
  std::ostringstream os;
  os << "E,E_tilde,boost_term,m_LY,C,lower,upper\n";
  const double v[] = {r.E, r.E_tilde, r.boost_term, r.m_LY, r.C, r.lower, r.upper};
  for (int i = 0; i < 7; ++i) os << (i ? "," : "") << format_number(v[i]);
  os << '\n';
  return os.str();
}

}  // namespace qle
