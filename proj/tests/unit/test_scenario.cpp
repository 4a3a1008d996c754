#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "ceit/error.hpp"
#include "ceit/scenario.hpp"

using namespace ceit;
using namespace ceit::scenario;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir() {
  const fs::path dir = fs::temp_directory_path() / "ceit_scenario_tests";
  fs::create_directories(dir);
  return dir;
}

std::string write_config(const std::string& name, const json& j) {
  const fs::path path = scratch_dir() / name;
  std::ofstream(path) << j.dump();
  return path.string();
}

std::string slurp(const fs::path& path) {
  std::ifstream f(path);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

json vacuum_probe() {
  return {{"g1", -0.005}, {"g2", -0.005}, {"gamma1", 0.06}, {"gamma2", 0.06},
          {"N", 1e6},     {"Omega1", 1.0}, {"Omega2", 0.0},  {"r", 2.0},
          {"delta", 2.0}};
}

ErrorCode parse_error(const json& j) {
  try {
    parse_config(j, false);
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kNoPeak;
}

}  // namespace

TEST_CASE("config parsing") {
  json j = vacuum_probe();
  j["alpha2"] = json::array({1.0, -2.0});
  j.erase("Omega2");
  const ScenarioConfig cfg = parse_config(j, false);
  CHECK(cfg.params.alpha1 == cplx(-200.0));
  CHECK(cfg.params.alpha2 == cplx(1.0, -2.0));
  CHECK(cfg.params.delta == 2.0);

  CHECK(parse_error({{"detla", 1.0}}) == ErrorCode::kConfigError);
  CHECK(parse_error({{"delta", "2"}}) == ErrorCode::kConfigError);
  CHECK(parse_error({{"alpha1", 1.0}, {"Omega1", 1.0}}) == ErrorCode::kConfigError);
  CHECK(parse_error({{"omega_points", 1}}) == ErrorCode::kConfigError);
  CHECK(parse_error({{"omega_start", 2.0}, {"omega_stop", 1.0}}) == ErrorCode::kConfigError);
  CHECK(parse_error({{"modes", {3}}}) == ErrorCode::kConfigError);
  CHECK(parse_error({{"omega_scale", "cubic"}}) == ErrorCode::kConfigError);
  CHECK(parse_error(json::array()) == ErrorCode::kConfigError);
}

TEST_CASE("gamma units") {
  json j = vacuum_probe();
  j["Gamma1"] = 2.0;
  j["Gamma2"] = 1.0;
  j["omega_stop"] = 3.0;
  const ScenarioConfig raw = parse_config(j, false);
  const ScenarioConfig scaled = parse_config(j, true);
  CHECK(raw.params.Gamma2 == 1.0);
  CHECK(scaled.params.Gamma1 == 2.0);
  CHECK(scaled.params.Gamma2 == 2.0);
  CHECK(scaled.params.g1 == -0.01);
  CHECK(scaled.params.delta == 4.0);
  CHECK(scaled.omega_stop == 6.0);
  // Omega scales like a frequency, so alpha = Omega / g is unchanged
  CHECK(scaled.params.alpha1 == raw.params.alpha1);
}

TEST_CASE("frequency grids") {
  ScenarioConfig cfg;
  cfg.omega_start = 1e-3;
  cfg.omega_stop = 10.0;
  cfg.omega_points = 5;
  auto g = omega_grid(cfg);
  CHECK(g.front() == 1e-3);
  CHECK(g.back() == 10.0);
  CHECK(g[2] == doctest::Approx(5.0005));
  cfg.log_scale = true;
  g = omega_grid(cfg);
  CHECK(g[2] == doctest::Approx(0.1));
}

TEST_CASE("spectrum command") {
  json j = vacuum_probe();
  j["omega_start"] = 0.1;
  j["omega_stop"] = 5.0;
  j["omega_points"] = 3;
  j["modes"] = {1, 2};
  j["thetas"] = {0.0, 1.5707963267948966};
  const std::string cfg = write_config("sweep.json", j);
  const fs::path csv = scratch_dir() / "sweep.csv";
  const fs::path out_json = scratch_dir() / "sweep_meta.json";
  std::ostringstream out, log;
  RunRequest req{"spectrum", cfg, csv.string(), out_json.string(), false};
  CHECK(run(req, out, log) == 0);
  const std::string first = slurp(csv);
  std::istringstream lines(first);
  std::string line;
  std::getline(lines, line);
  CHECK(line == "omega,mode,theta,value");
  int rows = 0;
  while (std::getline(lines, line)) ++rows;
  CHECK(rows == 12);
  const json meta = json::parse(slurp(out_json));
  CHECK(meta["schema_version"] == "1");
  CHECK(meta["rows_written"] == 12);
  CHECK(meta["gaps"].empty());

  CHECK(run(req, out, log) == 0);
  CHECK(slurp(csv) == first);
  CHECK(slurp(out_json) == meta.dump(2) + "\n");
}

TEST_CASE("steady and peaks commands") {
  json j = vacuum_probe();
  j["omega_start"] = 5.0;
  j["omega_stop"] = 12.0;
  const std::string cfg = write_config("peaks.json", j);
  std::ostringstream out, log;
  CHECK(run({"peaks", cfg, "", "", false}, out, log) == 0);
  const json peaks = json::parse(out.str());
  CHECK(peaks["command"] == "peaks");
  CHECK_FALSE(peaks["results"][0]["peaks"].empty());

  std::ostringstream sout;
  CHECK(run({"steady", cfg, "", "", false}, sout, log) == 0);
  const json st = json::parse(sout.str());
  CHECK(st["steady_state"]["w2"] == -1.0);
  CHECK(st["stability"]["max_real"].get<double>() < 0.0);
}

TEST_CASE("exit codes") {
  std::ostringstream out, log;
  json hot = vacuum_probe();
  hot["Omega2"] = 1.0;
  hot["delta"] = 0.0;
  hot["Gamma12"] = 0.01;
  CHECK(run({"spectrum", write_config("hot.json", hot), "", "", false}, out, log) == 3);
  CHECK(run({"spectrum", write_config("bad.json", {{"Gama1", 1.0}}), "", "", false}, out, log) == 2);
  json neg = vacuum_probe();
  neg["Gamma1"] = -1.0;
  CHECK(run({"steady", write_config("neg.json", neg), "", "", false}, out, log) == 2);
  const fs::path broken = scratch_dir() / "broken.json";
  std::ofstream(broken) << "{ \"delta\": ";
  CHECK(run({"steady", broken.string(), "", "", false}, out, log) == 2);
  json cap = vacuum_probe();
  cap["Omega2"] = 1.0;
  cap["Gamma12"] = 5e-4;
  cap["newton_max_iterations"] = 0;
  CHECK(run({"steady", write_config("cap.json", cap), "", "", false}, out, log) == 4);
  CHECK(run({"frobnicate", write_config("ok.json", vacuum_probe()), "", "", false}, out, log) == 2);
  CHECK(run({"", write_config("nocmd.json", vacuum_probe()), "", "", false}, out, log) == 2);
}

TEST_CASE("config command is a default") {
  json j = vacuum_probe();
  j["command"] = "steady";
  const std::string cfg = write_config("default_cmd.json", j);
  std::ostringstream a, b, log;
  CHECK(run({"", cfg, "", "", false}, a, log) == 0);
  CHECK(json::parse(a.str())["command"] == "steady");
  j["omega_start"] = 5.0;
  j["omega_stop"] = 12.0;
  CHECK(run({"peaks", write_config("override_cmd.json", j), "", "", false}, b, log) == 0);
  CHECK(json::parse(b.str())["command"] == "peaks");
}
