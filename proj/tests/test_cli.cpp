#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

namespace fs = std::filesystem;
using Json = nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
};

Run qlelab(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + (env.empty() ? "" : " ") + QLELAB_BINARY + std::string(" ") + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  for (std::size_t n; (n = fread(buf, 1, sizeof buf, pipe)) > 0;) out.append(buf, n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

fs::path scratch() {
  static const fs::path d = [] {
    const fs::path p = fs::temp_directory_path() / "qle_cli_test";
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
  }();
  return d;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write(const fs::path& p, const std::string& s) { std::ofstream(p, std::ios::binary) << s; }

}  // namespace

TEST_CASE("usage errors exit with 2") {
  CHECK(qlelab("").code == 2);
  CHECK(qlelab("frobnicate").code == 2);
  CHECK(qlelab("energy --family kerr --radius 10").code == 2);
  CHECK(qlelab("energy --family schwarzschild").code == 2);
  CHECK(qlelab("energy --family schwarzschild --radius 10 --a 1,2").code == 2);
  CHECK(qlelab("sweep --family flat --radii 4,2").code == 2);
  const fs::path cfg = scratch() / "bad.json";
  write(cfg, R"({"family": "flat", "radious": 3})");
  CHECK(qlelab("energy --config " + cfg.string()).code == 2);
  CHECK(qlelab("energy --config " + (scratch() / "missing.json").string()).code == 2);
  CHECK(qlelab("--help").code == 0);
}

TEST_CASE("numerical failures exit with 3 and 4") {
  CHECK(qlelab("energy --family schwarzschild --radius 0.2 --band-limit 8").code == 3);
  const fs::path metric = scratch() / "dumbbell.json";
  write(metric, R"({"band_limit": 12, "metric": {"kind": "from_surface",
                    "X": {"kind": "harmonic_perturbation", "radius": 1, "eps": 0.5, "l": 2, "m": 0}}})");
  CHECK(qlelab("embed --metric " + metric.string()).code == 3);

  const fs::path cfg = scratch() / "tight.json";
  write(cfg, R"({"tol": 1e-14, "max_iterations": 1})");
  const fs::path ell = scratch() / "ellipsoid.json";
  write(ell, R"({"band_limit": 12, "metric": {"kind": "from_surface", "X": {"kind": "ellipsoid", "axes": [1, 1, 1.3]}}})");
  CHECK(qlelab("embed --config " + cfg.string() + " --metric " + ell.string()).code == 4);
}

TEST_CASE("embed writes a reusable surface") {
  const fs::path metric = scratch() / "conformal.json";
  write(metric, R"({"band_limit": 12, "metric": {"kind": "conformal", "radius": 1, "eps": 0.01, "l": 2, "m": 0}})");
  const fs::path out = scratch() / "embed.json";
  const Run r = qlelab("embed --metric " + metric.string() + " --out " + out.string());
  REQUIRE(r.code == 0);
  CHECK(r.out.find("embedding converged") != std::string::npos);
  const Json j = Json::parse(slurp(out));
  CHECK(j["converged"] == true);
  CHECK(j["residual"].get<double>() <= 1e-8);

  // the stored coefficients describe a surface whose flat-slice energy vanishes
  const fs::path surf = scratch() / "surface.json";
  write(surf, j["surface"].dump());
  const fs::path eout = scratch() / "flat_energy.json";
  REQUIRE(qlelab("energy --surface " + surf.string() + " --a 0.3,0,0.2 --out " + eout.string()).code == 0);
  CHECK(std::abs(Json::parse(slurp(eout))["report"]["E"].get<double>()) <= 1e-9);
}

TEST_CASE("energy in the rest frame is the Liu-Yau mass") {
  const fs::path out = scratch() / "energy.json", csv = scratch() / "energy.csv";
  const Run r = qlelab("energy --family schwarzschild --radius 3 --band-limit 16 --out " + out.string() + " --csv " +
                       csv.string());
  REQUIRE(r.code == 0);
  const Json j = Json::parse(slurp(out));
  CHECK(j["report"]["E"].get<double>() == doctest::Approx(j["report"]["m_LY"].get<double>()).epsilon(1e-12));
  CHECK(j["W"]["causal"] == "timelike-future");
  CHECK(slurp(csv).rfind("E,E_tilde,boost_term,m_LY,C,lower,upper\n", 0) == 0);
}

TEST_CASE("infimum of a Schwarzschild sphere") {
  const fs::path out = scratch() / "inf.json";
  REQUIRE(qlelab("infimum --family schwarzschild --radius 3 --band-limit 16 --a 0.2,0,0 --out " + out.string()).code == 0);
  const Json j = Json::parse(slurp(out));
  CHECK(j["status"] == "closed-form");
  CHECK(j["value"].get<double>() == doctest::Approx(j["closed_form_value"].get<double>()).epsilon(1e-6));
}

TEST_CASE("sweep output is reproducible") {
  const fs::path a = scratch() / "sweep_a.csv", b = scratch() / "sweep_b.csv";
  const std::string args = "sweep --family composite --momentum 0.3,0,0 --radii 5:20:geometric --band-limit 12 ";
  REQUIRE(qlelab(args + "--out " + a.string()).code == 0);
  REQUIRE(qlelab(args + "--threads 3 --out " + b.string()).code == 0);
  const std::string text = slurp(a);
  CHECK(text == slurp(b));
  CHECK(text.rfind("r,m_LY,V1,V2,V3,causal,C_r,inf_numeric,inf_closed,eps_max\n", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 4);
  // a radius inside the horizon leaves an error row and exit code 3
  const Run bad = qlelab("sweep --family schwarzschild --radii 0.2,5 --band-limit 8");
  CHECK(bad.code == 3);
  CHECK(bad.out.find("0.20000000000000001,,,,,error,,,,") != std::string::npos);
}

TEST_CASE("scalar and vector kernels give the same answers") {
  const std::string args = "energy --family composite --momentum 0.1,0.2,0 --radius 8 --band-limit 16 --a 0.4,-0.1,0.3 ";
  const fs::path v = scratch() / "vec.json", s = scratch() / "scalar.json";
  REQUIRE(qlelab(args + "--out " + v.string()).code == 0);
  REQUIRE(qlelab(args + "--out " + s.string(), "QLELAB_SIMD=scalar").code == 0);
  const Json jv = Json::parse(slurp(v))["report"], js = Json::parse(slurp(s))["report"];
  for (const char* key : {"E", "E_tilde", "m_LY", "C", "lower", "upper"}) {
    CAPTURE(key);
    CHECK(std::abs(jv[key].get<double>() - js[key].get<double>()) <= 1e-12 * std::max(1.0, std::abs(js[key].get<double>())));
  }
}

TEST_CASE("verify suite") {
  const Run r = qlelab("verify --seed 7");
  CHECK(r.code == 0);
  CHECK(r.out.find("FAIL") == std::string::npos);
  CHECK(r.out.find("checks passed") != std::string::npos);
}
