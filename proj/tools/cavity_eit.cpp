// Scenario runner for the cavity EIT squeezing model.
//
//   cavity_eit spectrum --config scenarios/vacuum_probe_spectrum.json --out-csv s.csv
//   cavity_eit validate --out-json report.json

#include <iostream>

#include <CLI11.hpp>

#include "ceit/scenario.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Quadrature noise spectra of a two-mode cavity with Lambda atoms"};
  app.require_subcommand(1);

  ceit::scenario::RunRequest req;
  for (const char* name : {"spectrum", "peaks", "steady", "validate"}) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--config", req.config_path, "scenario JSON file")
        ->check(CLI::ExistingFile);
    sub->add_option("--out-csv", req.out_csv, "CSV output path");
    sub->add_option("--out-json", req.out_json, "JSON output path");
    sub->add_flag("--gamma-units", req.gamma_units,
                  "read rates and frequencies in units of Gamma1");
    sub->callback([&req, name] { req.command = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  return ceit::scenario::run(req, std::cout, std::cerr);
}
