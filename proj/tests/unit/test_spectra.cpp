#include <doctest.h>

#include <cmath>
#include <numbers>

#include "ceit/checks.hpp"
#include "ceit/error.hpp"
#include "ceit/spectra.hpp"
#include "ceit/validation.hpp"

using namespace ceit;
using doctest::Approx;

constexpr double kPi = std::numbers::pi;

namespace {

ModelParams empty_cavity(double r) {
  ModelParams p = validation::vacuum_probe_set();
  p.g1 = p.g2 = 0.0;
  p.r = r;
  return p;
}

}  // namespace

TEST_CASE("empty cavity") {
  const SpectrumEvaluator vac = build_evaluator(empty_cavity(0.0));
  const SpectrumEvaluator sq = build_evaluator(empty_cavity(2.0));
  for (double w : {0.0, 0.01, 0.2, 6.0}) {
    CHECK(vac.value(w, 1, 0.4) == Approx(1.0).epsilon(1e-12));
    CHECK(sq.value(w, 2, 0.0) == Approx(std::exp(-4.0)).epsilon(1e-9));
    CHECK(sq.value(w, 2, kPi / 2) == Approx(std::exp(4.0)).epsilon(1e-12));
  }
  CHECK_THROWS_AS(find_peaks(sq, 2, 0.0, {0.01, 1.0}), Error);
}

TEST_CASE("coherent input at zero frequency") {
  ModelParams p = validation::vacuum_probe_set();
  p.r = 0.0;
  const SpectrumEvaluator ev = build_evaluator(p);
  CHECK(ev.value(0.0, 2, 0.0) == Approx(1.0).epsilon(1e-3));
  CHECK(ev.value(0.0, 2, 1.1) == Approx(1.0).epsilon(1e-3));
}

TEST_CASE("zero-frequency noise matches the dephasing closed form") {
  for (double G12 : {1e-5, 1e-4, 5e-4}) {
    for (double delta : {0.0, 1.0}) {
      const ModelParams p = validation::vacuum_probe_set(delta, G12);
      const SpectrumEvaluator ev = build_evaluator(p);
      const double C = derived_quantities(p).C;
      for (double th : {0.0, kPi / 2}) {
        const double oracle = closedform::decoherence_w0(p.r, th, 1.0, 1.0, G12, delta, C);
        CHECK(ev.value(0.0, 2, th) == Approx(oracle).epsilon(1e-6));
      }
    }
  }
}

TEST_CASE("invariants across configurations") {
  const ModelParams sets[] = {validation::vacuum_probe_set(2.0),
                              validation::driven_probe_set(5.0, 1e-4),
                              validation::vacuum_probe_set(-3.0, 2e-4)};
  for (const auto& p : sets) {
    const SpectrumEvaluator ev = build_evaluator(p);
    for (double w : {1e-3, 0.02, 0.3, 4.0, 7.5}) {
      for (int mode : {1, 2}) {
        CHECK(std::abs(checks::output_commutator(ev, w, mode) - 1.0) < 1e-8);
        for (double th : {0.0, 0.3, 1.0, 2.2}) {
          const cplx s = ev.complex_value(w, mode, th);
          CHECK(std::abs(s.imag()) < 1e-10 * std::max(1.0, s.real()));
          CHECK(s.real() >= 0.0);
          CHECK(s.real() * ev.value(w, mode, th + kPi / 2) >= 1.0 - 1e-8);
          CHECK(ev.value(w, mode, th + kPi) == Approx(s.real()).epsilon(1e-12));
        }
      }
    }
  }
}

TEST_CASE("far-detuned input recovery") {
  const ModelParams p = validation::driven_probe_set(2.0, 1e-4);
  const SpectrumEvaluator ev = build_evaluator(p);
  const double w = 1e4 * p.gamma1;
  for (double th : {0.0, 0.8}) {
    CHECK(std::abs(ev.value(w, 2, th) - input_quadrature_noise(p, 2, th)) < 1e-3);
    CHECK(std::abs(ev.value(w, 1, th) - 1.0) < 1e-3);
  }
}

TEST_CASE("detuning reflection symmetry") {
  // conjugating the real-parameter equations flips delta and swaps a, a+,
  // so theta changes sign along with omega
  const SpectrumEvaluator pos = build_evaluator(validation::vacuum_probe_set(2.0));
  const SpectrumEvaluator neg = build_evaluator(validation::vacuum_probe_set(-2.0));
  for (double w : {0.05, 1.0, 5.5}) {
    for (double th : {0.0, 0.7, 2.0}) {
      CHECK(neg.value(-w, 2, -th) == Approx(pos.value(w, 2, th)).epsilon(1e-9));
    }
  }
}

TEST_CASE("sweeps") {
  const SpectrumEvaluator ev = build_evaluator(validation::vacuum_probe_set(2.0));
  const std::vector<double> grid = {0.1, 1.0, 5.0};
  const std::vector<int> modes = {1, 2};
  const std::vector<double> thetas = {0.0, 0.5};
  const SpectrumTable t = spectrum_sweep(ev, grid, modes, thetas);
  REQUIRE(t.rows.size() == 12);
  CHECK(t.gaps() == 0);
  std::size_t k = 0;
  for (double w : grid)
    for (int m : modes)
      for (double th : thetas) {
        const auto& row = t.rows[k++];
        CHECK(row.omega == w);
        CHECK(row.mode == m);
        CHECK(row.theta == th);
        CHECK(*row.value == ev.value(w, m, th));
        CHECK(*row.value == quadrature_spectrum(ev.model(), ev.correlations(), w, m, th));
      }
}

TEST_CASE("double-peak structure") {
  const SpectrumEvaluator ev = build_evaluator(validation::vacuum_probe_set(2.0));
  const auto peaks = find_peaks(ev, 2, 0.0, {0.1, 12.0});
  CHECK(peaks.size() >= 2);
}

TEST_CASE("peak finder") {
  SUBCASE("quadratic stub") {
    const auto peaks = find_peaks([](double x) { return 3.0 - (x - 0.37) * (x - 0.37); },
                                  {0.0, 1.0});
    REQUIRE(peaks.size() == 1);
    CHECK(peaks[0].omega_peak == Approx(0.37).epsilon(1e-6));
    CHECK(peaks[0].height == Approx(3.0));
    CHECK(peaks[0].second_derivative == Approx(-2.0).epsilon(1e-4));
  }
  SUBCASE("minima") {
    PeakOptions opts;
    opts.minima = true;
    const auto peaks = find_peaks([](double x) { return std::cos(x); }, {1.0, 5.0}, opts);
    REQUIRE(peaks.size() == 1);
    CHECK(peaks[0].omega_peak == Approx(kPi).epsilon(1e-8));
  }
  SUBCASE("flat") {
    CHECK_THROWS_AS(find_peaks([](double) { return 1.0; }, {0.0, 1.0}), Error);
  }
  SUBCASE("normal-splitting peak") {
    const ModelParams p = validation::vacuum_probe_set(4.0);
    const SpectrumEvaluator ev = build_evaluator(p);
    const auto peaks = find_peaks(ev, 2, 0.0, {5.0, 12.0});
    const auto& top = *std::max_element(peaks.begin(), peaks.end(),
                                        [](auto& a, auto& b) { return a.height < b.height; });
    CHECK(top.omega_peak == Approx(7.477).epsilon(0.10));
    // stationarity of the refined point
    const double h = 1e-6;
    const double slope = (ev.value(top.omega_peak + h, 2, 0.0) -
                          ev.value(top.omega_peak - h, 2, 0.0)) / (2 * h);
    CHECK(std::abs(slope) < 1e-6 * top.height / p.gamma1);
  }
}

TEST_CASE("unstable configurations are refused") {
  CHECK_THROWS_AS(build_evaluator(validation::driven_probe_set(0.0, 1e-2)), Error);
}

TEST_CASE("observed blocks exclude decoupled modes") {
  const SpectrumEvaluator ev = build_evaluator(empty_cavity(1.0));
  CHECK(ev.observed(1).size() == 2);
  CHECK(ev.observed(2).size() == 2);
  CHECK_FALSE(ev.near_singular(0.0, 2));
}
