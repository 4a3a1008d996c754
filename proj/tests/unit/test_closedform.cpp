#include <doctest.h>

#include <cmath>
#include <numbers>

#include "ceit/closedform.hpp"
#include "ceit/error.hpp"
#include "ceit/validation.hpp"

using namespace ceit;
using namespace ceit::closedform;
using doctest::Approx;

constexpr double kPi = std::numbers::pi;

TEST_CASE("upper normal-mode peak") {
  CHECK(omega_gt_max(0, 1, 25, false) == Approx(std::sqrt(26.0)).epsilon(1e-14));
  CHECK(omega_gt_max(4, 1, 25, false) == Approx(7.4772).epsilon(1e-5));
  CHECK(omega_gt_max(0, 1, 25, true) == Approx(5.1962).epsilon(1e-5));
}

TEST_CASE("lower peak") {
  CHECK(omega_lt_max(0.24, 0.06) == Approx(0.24819).epsilon(1e-5));
  CHECK(omega_lt_max(2.0, 0.06) == 0.0);
  CHECK(omega_lt_max(3.0, 0.06) == 0.0);
}

TEST_CASE("vacuum-probe limit spectrum") {
  for (double w : {0.0, 0.3, 5.0}) {
    CHECK(limit_spectrum_vacuum(w, 0.0, 2.0, 0.0) == Approx(std::exp(-4.0)).epsilon(1e-14));
  }
  const double wg = omega_lt_max(0.24, 0.06) / 0.06;
  CHECK(limit_spectrum_vacuum(wg, 0.24, 2.0, 0.0) == Approx(std::exp(4.0)).epsilon(1e-12));
  CHECK(limit_spectrum_vacuum(wg, 0.24, 2.0, kPi / 2) == Approx(std::exp(-4.0)).epsilon(1e-12));
}

TEST_CASE("driven-probe limit spectrum") {
  CHECK(limit_spectrum_driven_theta0(1e4, 0.24, 2.0) == Approx(std::exp(-4.0)).epsilon(1e-4 / std::exp(-4.0)));
  const double wg = std::sqrt((4 - 0.24 * 0.24) / (4 * 0.24 * 0.24));
  CHECK(limit_spectrum_driven_theta0(wg, 0.24, 2.0) == Approx(std::pow(std::cosh(2.0), 2)).epsilon(1e-12));
  CHECK(limit_spectrum_driven_theta0(1.0, 0.24, 2.0) == Approx(1.1028).epsilon(1e-4));
}

TEST_CASE("quadrature at the lower peak") {
  CHECK(quadrature_at_ltmax(0.0, 2.0, 0.24).first == Approx(14.154).epsilon(1e-4));
  CHECK(quadrature_at_ltmax(kPi / 4, 2.0, 0.24).first == Approx(15.792).epsilon(1e-4));
  for (double th : {0.0, 0.4, 1.3, 2.9}) {
    const auto [probe, pump] = quadrature_at_ltmax(th, 0.0, 1.5);
    CHECK(probe == Approx(1.0).epsilon(1e-14));
    CHECK(pump == Approx(1.0).epsilon(1e-14));
    const auto q = quadrature_at_ltmax(th, 1.2, 0.7);
    CHECK(q.second == Approx(quadrature_at_ltmax(th + kPi / 2, 1.2, 0.7).first).epsilon(1e-14));
  }
  CHECK_THROWS_AS(quadrature_at_ltmax(0.0, 2.0, 2.5), Error);
}

TEST_CASE("squeezing-exchange frequency") {
  CHECK(omega_sq(0.06, 0.005, 200, 25) == Approx(0.008165).epsilon(1e-4));
  CHECK(omega_sq(0.06, 0.005, 0, 25) == 0.0);
  CHECK(omega_sq(0.12, 0.005, 200, 25) == Approx(2 * omega_sq(0.06, 0.005, 200, 25)).epsilon(1e-15));
}

TEST_CASE("dephasing at zero frequency") {
  const double C = 0.005 * 0.005 * 1e6 / 0.06;
  CHECK(decoherence_w0(2.0, 0.0, 1.0, 1.0, 0.0, 0.0, C) == Approx(std::exp(-4.0)).epsilon(1e-14));
  CHECK(decoherence_w0(2.0, kPi / 2, 1.0, 1.0, 0.0, 0.0, C) == Approx(std::exp(4.0)).epsilon(1e-14));
  CHECK(std::abs(decoherence_w0(0.0, 0.0, 1.0, 1.0, 1e-4, 0.0, C) - 1.0001) <= 1e-4);
  CHECK(decoherence_w0(2.0, 0.0, 1.0, 1.0, 1e-4, 0.0, C) == Approx(0.2971).epsilon(2e-4));
}

TEST_CASE("inputs from model parameters") {
  ModelParams p = validation::vacuum_probe_set(100.0);
  const ClosedFormInput in = from_params(p, 0.03, 0.5);
  CHECK(in.consistent());
  CHECK(in.delta_c == Approx(0.24));
  CHECK(in.omega_gamma == Approx(0.5));
  CHECK(in.Omega == Approx(1.0));
  CHECK(in.Ng2 == Approx(25.0));
  ClosedFormInput bad = in;
  bad.delta_c *= 1.01;
  CHECK_FALSE(bad.consistent());

  const Regime reg = check_regime(in);
  CHECK(reg.gamma_small);
  CHECK_FALSE(reg.delta_large);  // 1e4 vs 10 x 1667
  CHECK(reg.cooperativity_ok);
}
