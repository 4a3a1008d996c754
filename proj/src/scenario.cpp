#include "ceit/scenario.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <set>

#include "ceit/error.hpp"
#include "ceit/fluctuations.hpp"
#include "ceit/spectra.hpp"
#include "ceit/validation.hpp"

namespace ceit::scenario {

using nlohmann::json;

namespace {

[[noreturn]] void config_error(const std::string& msg) {
  throw Error(ErrorCode::kConfigError, msg);
}

double get_number(const json& j, const char* key) {
  const json& v = j.at(key);
  if (!v.is_number()) config_error(std::string(key) + ": expected a number");
  return v.get<double>();
}

cplx get_complex(const json& j, const char* key) {
  const json& v = j.at(key);
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
    return {v[0].get<double>(), v[1].get<double>()};
  }
  config_error(std::string(key) + ": expected a number or [re, im]");
}

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys = {
      "Gamma1", "Gamma2", "Gamma12", "gamma1", "gamma2", "g1", "g2",
      "delta", "N", "alpha1", "alpha2", "Omega1", "Omega2", "r", "phi",
      "literal_mode", "omega_start", "omega_stop", "omega_points",
      "omega_scale", "modes", "thetas", "csv_path", "json_path", "command",
      "newton_max_iterations", "newton_tolerance"};
  return keys;
}

std::string fmt9(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

json complex_json(cplx z) { return json::array({z.real(), z.imag()}); }

int exit_code_for(ErrorCode c) {
  switch (c) {
    case ErrorCode::kConfigError:
    case ErrorCode::kNegativeRate:
    case ErrorCode::kZeroAtoms:
    case ErrorCode::kAsymmetricCoupling:
    case ErrorCode::kZeroDrive:
    case ErrorCode::kDomainError:
      return 2;
    case ErrorCode::kUnstable:
      return 3;
    case ErrorCode::kNoConvergence:
    case ErrorCode::kSingularJacobian:
      return 4;
    default:
      return 5;
  }
}

void write_json(const json& j, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << j.dump(2) << '\n';
    return;
  }
  std::ofstream f(path);
  if (!f) config_error("cannot write " + path);
  f << j.dump(2) << '\n';
}

json header(const std::string& command) {
  return {{"schema_version", "1"}, {"command", command}};
}

json params_json(const ModelParams& p) {
  return {{"Gamma1", p.Gamma1}, {"Gamma2", p.Gamma2}, {"Gamma12", p.Gamma12},
          {"gamma1", p.gamma1}, {"gamma2", p.gamma2}, {"g1", p.g1},
          {"g2", p.g2},         {"delta", p.delta},   {"N", p.N},
          {"alpha1", complex_json(p.alpha1)},
          {"alpha2", complex_json(p.alpha2)},
          {"r", p.r},           {"phi", p.phi},
          {"literal_mode", p.literal_mode}};
}

int run_spectrum(const ScenarioConfig& cfg, const RunRequest& req,
                 std::ostream& out, std::ostream& log, double fscale) {
  const SpectrumEvaluator ev = build_evaluator(cfg.params, cfg.newton);
  const std::vector<double> grid = omega_grid(cfg);
  const SpectrumTable table = spectrum_sweep(ev, grid, cfg.modes, cfg.thetas);

  std::ofstream file;
  const std::string csv_path = req.out_csv.empty() ? cfg.csv_path : req.out_csv;
  if (!csv_path.empty()) {
    file.open(csv_path);
    if (!file) config_error("cannot write " + csv_path);
  }
  std::ostream& csv = csv_path.empty() ? out : file;
  csv << "omega,mode,theta,value\n";
  json gaps = json::array();
  for (const auto& row : table.rows) {
    const double w = row.omega / fscale;
    if (!row.value) {
      gaps.push_back({{"omega", w}, {"mode", row.mode}, {"theta", row.theta},
                      {"value", nullptr}});
      continue;
    }
    csv << fmt9(w) << ',' << row.mode << ',' << fmt9(row.theta) << ','
        << fmt9(*row.value) << '\n';
  }

  const std::string json_path = req.out_json.empty() ? cfg.json_path : req.out_json;
  if (!json_path.empty()) {
    json j = header("spectrum");
    j["parameters"] = params_json(cfg.params);
    j["grid_points"] = grid.size();
    j["rows"] = table.rows.size();
    j["rows_written"] = table.rows.size() - table.gaps();
    j["gaps"] = gaps;
    j["max_real_eigenvalue"] = ev.stability().max_real / fscale;
    write_json(j, json_path, out);
  }
  if (table.gaps() > 0) log << table.gaps() << " near-singular point(s) omitted\n";
  return 0;
}

int run_peaks(const ScenarioConfig& cfg, const RunRequest& req,
              std::ostream& out, double fscale) {
  const SpectrumEvaluator ev = build_evaluator(cfg.params, cfg.newton);
  json list = json::array();
  for (int mode : cfg.modes) {
    for (double th : cfg.thetas) {
      json peaks = json::array();
      try {
        for (const auto& pk : find_peaks(ev, mode, th, {cfg.omega_start, cfg.omega_stop})) {
          peaks.push_back({{"omega_peak", pk.omega_peak / fscale},
                           {"height", pk.height},
                           {"second_derivative", pk.second_derivative * fscale * fscale},
                           {"bracket", {pk.bracket[0] / fscale, pk.bracket[1] / fscale}},
                           {"iterations", pk.iterations}});
        }
      } catch (const Error& e) {
        if (e.code() != ErrorCode::kNoPeak) throw;
      }
      list.push_back({{"mode", mode}, {"theta", th}, {"peaks", peaks}});
    }
  }
  json j = header("peaks");
  j["parameters"] = params_json(cfg.params);
  j["window"] = {cfg.omega_start / fscale, cfg.omega_stop / fscale};
  j["results"] = list;
  write_json(j, req.out_json.empty() ? cfg.json_path : req.out_json, out);
  return 0;
}

int run_steady(const ScenarioConfig& cfg, const RunRequest& req,
               std::ostream& out, double fscale) {
  const ModelParams& p = cfg.params;
  const SteadyState ss = solve_steady_state(p, cfg.newton);
  const StabilityReport st = analyze_stability(drift_jacobian(p, ss));
  const MeanState& m = ss.mean;
  json eig = json::array(), marginal = json::array();
  for (cplx z : st.eigenvalues) eig.push_back(complex_json(z / fscale));
  for (cplx z : st.marginal) marginal.push_back(complex_json(z / fscale));
  json j = header("steady");
  j["parameters"] = params_json(p);
  j["steady_state"] = {{"a1", complex_json(m.a1)},   {"a2", complex_json(m.a2)},
                       {"s10", complex_json(m.s10)}, {"s20", complex_json(m.s20)},
                       {"s21", complex_json(m.s21)}, {"w1", m.w1},
                       {"w2", m.w2},                 {"p00", m.p00()},
                       {"p11", m.p11()},             {"p22", m.p22()},
                       {"drive1", complex_json(ss.drives.drive1)},
                       {"drive2", complex_json(ss.drives.drive2)},
                       {"residual", ss.residual},    {"iterations", ss.iterations}};
  j["stability"] = {{"max_real", st.max_real / fscale},
                    {"marginal", marginal},
                    {"eigenvalues", eig}};
  write_json(j, req.out_json.empty() ? cfg.json_path : req.out_json, out);
  return 0;
}

int run_validate(const RunRequest& req, const std::string& cfg_json_path,
                 std::ostream& out, std::ostream& log) {
  const validation::ValidationReport rep = validation::run_acceptance_suite();
  json crit = json::array();
  for (const auto& c : rep.criteria) {
    json recs = json::array();
    for (const auto& r : c.records) {
      recs.push_back({{"name", r.name}, {"expected", r.expected},
                      {"observed", r.observed}, {"tolerance", r.tolerance},
                      {"pass", r.pass}, {"note", r.note}});
    }
    crit.push_back({{"id", c.id}, {"title", c.title}, {"pass", c.pass},
                    {"records", recs}});
    log << (c.pass ? "PASS " : "FAIL ") << c.id << ' ' << c.title << '\n';
  }
  json j = header("validate");
  j["pass"] = rep.pass;
  j["criteria"] = crit;
  j["metadata"] = {{"runtime_seconds", rep.runtime_seconds}};
  const std::string path = req.out_json.empty() ? cfg_json_path : req.out_json;
  if (!path.empty()) write_json(j, path, out);
  return rep.pass ? 0 : 1;
}

}  // namespace

ScenarioConfig parse_config(const json& j, bool gamma_units) {
  if (!j.is_object()) config_error("config must be a JSON object");
  for (const auto& [key, _] : j.items()) {
    if (!known_keys().count(key)) config_error("unknown key '" + key + "'");
  }
  ScenarioConfig cfg;
  ModelParams& p = cfg.params;
  auto num = [&](const char* key, double& dst) {
    if (j.contains(key)) dst = get_number(j, key);
  };
  num("Gamma1", p.Gamma1);
  num("Gamma2", p.Gamma2);
  num("Gamma12", p.Gamma12);
  num("gamma1", p.gamma1);
  num("gamma2", p.gamma2);
  num("g1", p.g1);
  num("g2", p.g2);
  num("delta", p.delta);
  num("N", p.N);
  num("r", p.r);
  num("phi", p.phi);
  num("omega_start", cfg.omega_start);
  num("omega_stop", cfg.omega_stop);

  const double u = gamma_units ? p.Gamma1 : 1.0;
  for (double* f : {&p.Gamma2, &p.Gamma12, &p.gamma1, &p.gamma2, &p.g1, &p.g2,
                    &p.delta, &cfg.omega_start, &cfg.omega_stop}) {
    *f *= u;
  }

  auto amplitude = [&](const char* a_key, const char* o_key, double g, cplx& dst) {
    if (j.contains(a_key) && j.contains(o_key)) {
      config_error(std::string("give either ") + a_key + " or " + o_key);
    }
    if (j.contains(a_key)) dst = get_complex(j, a_key);
    if (j.contains(o_key)) {
      if (g == 0.0) config_error(std::string(o_key) + " needs a nonzero coupling");
      dst = get_complex(j, o_key) * u / g;
      dst = {dst.real() + 0.0, dst.imag() + 0.0};  // no signed zeros in reports
    }
  };
  amplitude("alpha1", "Omega1", p.g1, p.alpha1);
  amplitude("alpha2", "Omega2", p.g2, p.alpha2);

  if (j.contains("literal_mode")) {
    if (!j["literal_mode"].is_boolean()) config_error("literal_mode: expected a boolean");
    p.literal_mode = j["literal_mode"].get<bool>();
  }
  if (j.contains("omega_points")) {
    if (!j["omega_points"].is_number_integer()) config_error("omega_points: expected an integer");
    cfg.omega_points = j["omega_points"].get<int>();
  }
  if (j.contains("omega_scale")) {
    const json& s = j["omega_scale"];
    if (s == "linear") cfg.log_scale = false;
    else if (s == "log") cfg.log_scale = true;
    else config_error("omega_scale: expected \"linear\" or \"log\"");
  }
  if (j.contains("modes")) {
    cfg.modes.clear();
    if (!j["modes"].is_array() || j["modes"].empty()) config_error("modes: expected a nonempty list");
    for (const auto& m : j["modes"]) {
      if (m != 1 && m != 2) config_error("modes: entries must be 1 or 2");
      cfg.modes.push_back(m.get<int>());
    }
  }
  if (j.contains("thetas")) {
    cfg.thetas.clear();
    if (!j["thetas"].is_array() || j["thetas"].empty()) config_error("thetas: expected a nonempty list");
    for (const auto& t : j["thetas"]) {
      if (!t.is_number()) config_error("thetas: entries must be numbers");
      cfg.thetas.push_back(t.get<double>());
    }
  }
  auto str = [&](const char* key, std::string& dst) {
    if (!j.contains(key)) return;
    if (!j[key].is_string()) config_error(std::string(key) + ": expected a string");
    dst = j[key].get<std::string>();
  };
  str("csv_path", cfg.csv_path);
  str("json_path", cfg.json_path);
  str("command", cfg.command);
  if (j.contains("newton_max_iterations")) {
    if (!j["newton_max_iterations"].is_number_integer()) {
      config_error("newton_max_iterations: expected an integer");
    }
    cfg.newton.max_iterations = j["newton_max_iterations"].get<int>();
  }
  num("newton_tolerance", cfg.newton.tolerance);

  if (cfg.omega_points < 2) config_error("omega_points must be >= 2");
  if (!(cfg.omega_start < cfg.omega_stop)) config_error("omega_start must be < omega_stop");
  if (cfg.log_scale && cfg.omega_start <= 0.0) config_error("log grid needs omega_start > 0");
  return cfg;
}

ScenarioConfig load_config(const std::string& path, bool gamma_units) {
  std::ifstream f(path);
  if (!f) config_error("cannot read " + path);
  json j;
  try {
    j = json::parse(f);
  } catch (const json::parse_error& e) {
    config_error(path + ": " + e.what());
  }
  return parse_config(j, gamma_units);
}

std::vector<double> omega_grid(const ScenarioConfig& cfg) {
  std::vector<double> grid(cfg.omega_points);
  const double n = cfg.omega_points - 1;
  for (int k = 0; k < cfg.omega_points; ++k) {
    grid[k] = cfg.log_scale
                  ? cfg.omega_start * std::pow(cfg.omega_stop / cfg.omega_start, k / n)
                  : cfg.omega_start + (cfg.omega_stop - cfg.omega_start) * (k / n);
  }
  grid.back() = cfg.omega_stop;
  return grid;
}

int run(const RunRequest& req, std::ostream& out, std::ostream& log) {
  try {
    ScenarioConfig cfg;
    if (!req.config_path.empty()) cfg = load_config(req.config_path, req.gamma_units);
    // the config's command is only a default
    const std::string command = req.command.empty() ? cfg.command : req.command;
    if (command == "validate") return run_validate(req, cfg.json_path, out, log);
    if (req.config_path.empty()) config_error(command + " needs --config");

    std::vector<ValidationWarning> warnings;
    validate_params(cfg.params, &warnings);
    for (const auto& w : warnings) log << "warning: " << w.message << '\n';

    const double fscale = req.gamma_units ? cfg.params.Gamma1 : 1.0;
    if (command == "spectrum") return run_spectrum(cfg, req, out, log, fscale);
    if (command == "peaks") return run_peaks(cfg, req, out, fscale);
    if (command == "steady") return run_steady(cfg, req, out, fscale);
    config_error(command.empty() ? "no command given" : "unknown command '" + command + "'");
  } catch (const Error& e) {
    log << "error: " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const nlohmann::json::exception& e) {
    log << "error: config: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace ceit::scenario
