#pragma once

#include <string>
#include <vector>

#include "ceit/closedform.hpp"
#include "ceit/model.hpp"

namespace ceit::validation {

struct ValidationRecord {
  std::string name;
  double expected = 0.0;
  double observed = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::string note;  // comparison rule, plus RegimeViolation annotations
};

struct CriterionResult {
  int id = 0;
  std::string title;
  std::vector<ValidationRecord> records;
  bool pass = false;  // every record passes
};

struct ValidationReport {
  std::vector<CriterionResult> criteria;
  bool pass = false;
  double runtime_seconds = 0.0;
};

// |numeric - oracle| <= rel_tol * |oracle|.
ValidationRecord compare_to_closed_form(std::string name, double numeric,
                                        double oracle, double rel_tol,
                                        std::string regime_note = {});
ValidationRecord compare_absolute(std::string name, double numeric,
                                  double expected, double abs_tol);
ValidationRecord require_below(std::string name, double observed, double bound);
ValidationRecord require_above(std::string name, double observed, double bound);

// Empty when the validity conditions of the large-N expressions hold,
// otherwise a RegimeViolation note naming each failed condition.
std::string regime_note(const closedform::ClosedFormInput& in, bool driven);

// Reference parameter sets. Vacuum probe: g = -0.005, Omega1 = 1, Omega2 = 0,
// gamma = 0.06, N = 1e6, r = 2, Gamma = 1. Driven probe: same with Omega2 = 1.
ModelParams vacuum_probe_set(double delta = 0.0, double Gamma12 = 0.0);
ModelParams driven_probe_set(double delta = 0.0, double Gamma12 = 0.0);

inline constexpr int kCriterionCount = 12;
CriterionResult run_criterion(int id);
ValidationReport run_acceptance_suite();

}  // namespace ceit::validation
