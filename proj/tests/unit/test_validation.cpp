#include <doctest.h>

#include "ceit/validation.hpp"

using namespace ceit;
using namespace ceit::validation;

TEST_CASE("closed-form comparison records") {
  CHECK(compare_to_closed_form("peak", 7.46, 7.477, 0.10).pass);
  CHECK(compare_to_closed_form("same", 2.5, 2.5, 0.0).pass);
  const ValidationRecord bad = compare_to_closed_form("off", 1.5, 1.0, 0.05);
  CHECK_FALSE(bad.pass);
  CHECK(bad.expected == 1.0);
  CHECK(bad.observed == 1.5);
  CHECK(bad.tolerance == 0.05);
}

TEST_CASE("bound records") {
  CHECK(require_below("x", 0.5, 1.0).pass);
  CHECK_FALSE(require_below("x", 1.0, 1.0).pass);
  CHECK(require_above("x", 1.0, 1.0).pass);
  CHECK_FALSE(require_above("x", 0.99, 1.0).pass);
  CHECK(compare_absolute("x", 1.0 + 5e-13, 1.0, 1e-12).pass);
  CHECK_FALSE(compare_absolute("x", 1.0 + 2e-12, 1.0, 1e-12).pass);
}

TEST_CASE("regime violations are annotated, not fatal") {
  const auto ok = closedform::from_params(vacuum_probe_set(2000.0));
  CHECK(regime_note(ok, false).empty());
  const auto tight = closedform::from_params(vacuum_probe_set(100.0));
  const std::string note = regime_note(tight, false);
  CHECK(note.find("RegimeViolation") == 0);
  CHECK(note.find("delta^2") != std::string::npos);
  const ValidationRecord rec = compare_to_closed_form("v", 1.0, 1.0, 0.1, note);
  CHECK(rec.pass);
  CHECK(rec.note.find("RegimeViolation") != std::string::npos);
}

TEST_CASE("reference parameter sets") {
  const ModelParams v = vacuum_probe_set();
  CHECK(derived_quantities(v).Omega1 == cplx(1.0));
  CHECK(derived_quantities(v).Omega2 == cplx(0.0));
  CHECK(v.r == 2.0);
  const ModelParams d = driven_probe_set(3.0, 1e-4);
  CHECK(derived_quantities(d).Omega2 == cplx(1.0));
  CHECK(d.delta == 3.0);
  CHECK(d.Gamma12 == 1e-4);
}
