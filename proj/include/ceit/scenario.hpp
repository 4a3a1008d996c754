#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "ceit/model.hpp"
#include "ceit/semiclassics.hpp"

namespace ceit::scenario {

// Flat key schema of a scenario file. Frequencies are raw unless the runner
// is given --gamma-units, in which case every rate, coupling and frequency
// except Gamma1 is read in units of Gamma1.
struct ScenarioConfig {
  ModelParams params;
  double omega_start = 0.0;
  double omega_stop = 1.0;
  int omega_points = 201;
  bool log_scale = false;
  std::vector<int> modes{2};
  std::vector<double> thetas{0.0};
  std::string csv_path;
  std::string json_path;
  std::string command;
  NewtonOptions newton;
};

// Throws Error(kConfigError) on unknown keys, wrong types or a bad grid.
ScenarioConfig parse_config(const nlohmann::json& j, bool gamma_units);
ScenarioConfig load_config(const std::string& path, bool gamma_units);

std::vector<double> omega_grid(const ScenarioConfig& cfg);

struct RunRequest {
  std::string command;  // spectrum | peaks | steady | validate
  std::string config_path;
  std::string out_csv;
  std::string out_json;
  bool gamma_units = false;
};

// Exit codes: 0 ok, 1 validation failure, 2 config or parameter error,
// 3 Unstable, 4 NoConvergence, 5 any other numerical failure.
// Data with no output path goes to `out`; diagnostics go to `log`.
int run(const RunRequest& req, std::ostream& out, std::ostream& log);

}  // namespace ceit::scenario
