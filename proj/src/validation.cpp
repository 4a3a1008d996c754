#include "ceit/validation.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "ceit/checks.hpp"
#include "ceit/error.hpp"
#include "ceit/fluctuations.hpp"
#include "ceit/spectra.hpp"

namespace ceit::validation {

namespace {

constexpr double kPi = std::numbers::pi;

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

std::vector<double> linspace_open(double lo, double hi, int n) {
  // n interior points of (lo, hi)
  std::vector<double> out;
  for (int k = 1; k <= n; ++k) out.push_back(lo + (hi - lo) * k / (n + 1));
  return out;
}

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> out;
  for (int k = 0; k < n; ++k) out.push_back(lo + (hi - lo) * k / (n - 1));
  return out;
}

std::vector<double> theta_grid(int n) {
  std::vector<double> out;
  for (int k = 0; k < n; ++k) out.push_back(kPi * k / n);
  return out;
}

CriterionResult finish(int id, std::string title,
                       std::vector<ValidationRecord> records) {
  CriterionResult res{id, std::move(title), std::move(records), true};
  res.pass = std::all_of(res.records.begin(), res.records.end(),
                         [](const auto& r) { return r.pass; });
  return res;
}

// Highest-frequency maximum in the window.
PeakReport upper_peak(const SpectrumEvaluator& ev, int mode, double theta,
                      std::array<double, 2> window) {
  auto peaks = find_peaks(ev, mode, theta, window);
  return *std::max_element(peaks.begin(), peaks.end(),
                           [](const auto& a, const auto& b) {
                             return a.omega_peak < b.omega_peak;
                           });
}

// Tallest maximum in the window.
PeakReport dominant_peak(const SpectrumEvaluator& ev, int mode, double theta,
                         std::array<double, 2> window) {
  auto peaks = find_peaks(ev, mode, theta, window);
  return *std::max_element(
      peaks.begin(), peaks.end(),
      [](const auto& a, const auto& b) { return a.height < b.height; });
}

ModelParams no_atoms(double r) {
  ModelParams p = vacuum_probe_set();
  p.g1 = p.g2 = 0.0;
  p.r = r;
  return p;
}

// 1. no atoms, vacuum inputs
CriterionResult vacuum_normalization() {
  const SpectrumEvaluator ev = build_evaluator(no_atoms(0.0));
  const double gamma = ev.model().params.gamma1;
  std::vector<ValidationRecord> recs;
  for (int mode : {1, 2}) {
    double worst = 0.0;
    for (double w : linspace(0.0, 100.0 * gamma, 200)) {
      for (double th : theta_grid(8)) {
        worst = std::max(worst, std::abs(ev.value(w, mode, th) - 1.0));
      }
    }
    recs.push_back(compare_absolute("mode " + std::to_string(mode) +
                                        " max |S - 1| over 200 omegas x 8 thetas",
                                    1.0 + worst, 1.0, 1e-12));
  }
  return finish(1, "vacuum normalization without atoms", std::move(recs));
}

// 2. empty cavity passes squeezing through unchanged
CriterionResult empty_cavity_squeezing() {
  const SpectrumEvaluator ev = build_evaluator(no_atoms(2.0));
  const double gamma = ev.model().params.gamma1;
  const double expected = std::exp(-4.0);
  double worst_value = expected;
  for (double w : linspace(0.0, 100.0 * gamma, 200)) {
    const double v = ev.value(w, 2, 0.0);
    if (std::abs(v - expected) > std::abs(worst_value - expected)) worst_value = v;
  }
  return finish(2, "empty-cavity squeezing pass-through",
                {compare_absolute("probe theta=0 worst point vs e^-4",
                                  worst_value, expected, 1e-10)});
}

// 3. coherent input is preserved at omega = 0
CriterionResult coherent_preservation() {
  std::vector<ValidationRecord> recs;
  for (double G12 : {0.0, 1e-4}) {
    for (double delta : {0.0, 2.0}) {
      ModelParams p = vacuum_probe_set(delta, G12);
      p.r = 0.0;
      const SpectrumEvaluator ev = build_evaluator(p);
      const double s0 = ev.value(0.0, 2, 0.0);
      const auto d = derived_quantities(p);
      const double oracle = closedform::decoherence_w0(
          0.0, 0.0, std::abs(d.Omega1), p.Gamma1, G12, delta, d.C);
      const std::string tag =
          "Gamma12=" + fmt(G12) + " delta=" + fmt(delta);
      recs.push_back(compare_absolute(tag + " S(0) vs 1", s0, 1.0, 1e-3));
      recs.push_back(compare_absolute(tag + " S(0) vs decoherence_w0", s0,
                                      oracle, 1e-3));
    }
  }
  return finish(3, "coherent preservation at omega = 0", std::move(recs));
}

// 4. normal-mode splitting peak, vacuum probe
CriterionResult normal_splitting_peak() {
  std::vector<ValidationRecord> recs;
  for (double delta : {2.0, 4.0, 8.0}) {
    const ModelParams p = vacuum_probe_set(delta);
    const SpectrumEvaluator ev = build_evaluator(p);
    const auto in = closedform::from_params(p);
    const double oracle = closedform::omega_gt_max(delta, in.Omega, in.Ng2, false);
    const PeakReport pk = upper_peak(ev, 2, 0.0, {0.1, 2.0 * oracle});
    recs.push_back(compare_to_closed_form("delta=" + fmt(delta) + " upper peak",
                                          pk.omega_peak, oracle, 0.10,
                                          in.gamma * 10.0 <= in.Gamma
                                              ? ""
                                              : "RegimeViolation: gamma << Gamma"));
  }
  return finish(4, "normal-splitting peak (vacuum probe)", std::move(recs));
}

// 5. low-frequency peak and quadrature rotation, vacuum probe
CriterionResult low_frequency_rotation() {
  const ModelParams p = vacuum_probe_set(100.0);
  const SpectrumEvaluator ev = build_evaluator(p);
  const auto in = closedform::from_params(p);
  const std::string note = regime_note(in, false);
  const double oracle = closedform::omega_lt_max(in.delta_c, in.gamma);
  const PeakReport pk = dominant_peak(ev, 2, 0.0, {0.01, 2.0});
  std::vector<ValidationRecord> recs;
  recs.push_back(compare_to_closed_form("lower peak position", pk.omega_peak,
                                        oracle, 0.25, note));
  recs.push_back(require_above("Delta Y_{2,0} at peak",
                               ev.value(pk.omega_peak, 2, 0.0), 20.0));
  recs.push_back(require_below("Delta Y_{2,pi/2} at peak",
                               ev.value(pk.omega_peak, 2, 0.5 * kPi), 0.1));
  recs.back().note += note.empty() ? "" : "; " + note;
  return finish(5, "low-frequency peak and pi/2 rotation (vacuum probe)",
                std::move(recs));
}

// 6. driven probe: peak value and probe/pump equality
CriterionResult driven_peak_value() {
  const ModelParams p = driven_probe_set(40.0);
  const SpectrumEvaluator ev = build_evaluator(p);
  const auto in = closedform::from_params(p);
  const std::string note = regime_note(in, true);
  const PeakReport pk = dominant_peak(ev, 2, 0.0, {0.1, 2.0});
  const double oracle = closedform::quadrature_at_ltmax(0.0, p.r, in.delta_c).first;
  std::vector<ValidationRecord> recs;
  recs.push_back(compare_to_closed_form("Delta Y_{2,0} at lower peak", pk.height,
                                        oracle, 0.25, note));
  for (double th : theta_grid(8)) {
    const double probe = ev.value(pk.omega_peak, 2, th + 0.5 * kPi);
    const double pump = ev.value(pk.omega_peak, 1, th);
    recs.push_back(compare_to_closed_form(
        "Delta Y_{1,theta} vs Delta Y_{2,theta+pi/2} theta=" + fmt(th), pump,
        probe, 0.15, note));
  }
  return finish(6, "driven-probe peak value and probe/pump equality",
                std::move(recs));
}

// 7. squeezing transfer to the pump, insensitive to delta
CriterionResult squeezing_transfer() {
  const ModelParams p0 = driven_probe_set(0.0);
  const SpectrumEvaluator ev0 = build_evaluator(p0);
  const double wsq = closedform::omega_sq(p0.gamma1, std::abs(p0.g1),
                                          std::abs(p0.alpha1),
                                          p0.g1 * p0.g1 * p0.N / p0.Gamma1);
  double best = std::numeric_limits<double>::infinity();
  for (double th : theta_grid(180)) best = std::min(best, ev0.value(wsq, 1, th));
  std::vector<ValidationRecord> recs;
  recs.push_back(require_below("min_theta pump S at omega_sq=" + fmt(wsq), best, 0.9));

  const auto grid = linspace_open(0.0, 0.25 * p0.gamma1, 50);
  std::vector<double> ref;
  for (double w : grid) ref.push_back(ev0.value(w, 1, 0.0));
  for (double delta : {2.0, 5.0}) {
    const SpectrumEvaluator ev = build_evaluator(driven_probe_set(delta));
    double worst = 0.0;
    for (std::size_t k = 0; k < grid.size(); ++k) {
      worst = std::max(worst, std::abs(ev.value(grid[k], 1, 0.0) - ref[k]) / ref[k]);
    }
    recs.push_back(compare_to_closed_form(
        "pump theta=0 delta=" + fmt(delta) + " vs delta=0, max rel dev (omega<gamma/4)",
        1.0 + worst, 1.0, 0.05));
  }
  return finish(7, "squeezing transfer and delta independence", std::move(recs));
}

// 8. dephasing destroys the transfer
CriterionResult decoherence_destroys_transfer() {
  const SpectrumEvaluator ev = build_evaluator(driven_probe_set(0.0, 5e-4));
  const double gamma = ev.model().params.gamma1;
  double best = std::numeric_limits<double>::infinity();
  for (double w : linspace_open(0.0, gamma, 60)) {
    for (double th : theta_grid(36)) best = std::min(best, ev.value(w, 1, th));
  }
  return finish(8, "decoherence destroys squeezing transfer",
                {require_above("min pump S over theta, omega<gamma", best, 0.98)});
}

// 9. noise grows with delta under dephasing
CriterionResult delta_sensitivity() {
  const double gamma = driven_probe_set().gamma1;
  const auto grid = linspace_open(0.0, gamma, 50);
  std::vector<std::vector<double>> curves;
  for (double delta : {0.0, 2.0, 5.0}) {
    const SpectrumEvaluator ev = build_evaluator(driven_probe_set(delta, 1e-4));
    std::vector<double> c;
    for (double w : grid) c.push_back(ev.value(w, 2, 0.0));
    curves.push_back(std::move(c));
  }
  std::vector<ValidationRecord> recs;
  const char* pairs[] = {"S(delta=2) - S(delta=0)", "S(delta=5) - S(delta=2)"};
  for (int k = 0; k < 2; ++k) {
    double worst = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < grid.size(); ++i) {
      worst = std::min(worst, curves[k + 1][i] - curves[k][i]);
    }
    recs.push_back(require_above(std::string("min over grid of ") + pairs[k], worst, 0.0));
  }
  return finish(9, "probe noise nondecreasing in delta under dephasing",
                std::move(recs));
}

double max_real_at(double Gamma12) {
  const ModelParams p = driven_probe_set(0.0, Gamma12);
  const SteadyState ss = solve_steady_state(validate_params(p));
  return analyze_stability(drift_jacobian(p, ss)).max_real;
}

// 10. dephasing instability threshold
CriterionResult instability_threshold() {
  const double Gamma = driven_probe_set().Gamma1;
  std::vector<ValidationRecord> recs;
  const double low = Gamma / 400.0;
  const double at_low = max_real_at(low);
  recs.push_back(require_below("max Re eig at Gamma12=Gamma/400", at_low, 0.0));

  double lo = low, hi = Gamma / 50.0;
  const double at_hi = max_real_at(hi);
  recs.push_back(require_above("max Re eig at Gamma12=Gamma/50", at_hi, 0.0));
  if (at_low < 0.0 && at_hi > 0.0) {
    while (hi - lo > 1e-6 * hi) {
      const double mid = 0.5 * (lo + hi);
      (max_real_at(mid) > 0.0 ? hi : lo) = mid;
    }
    const double crossing = 0.5 * (lo + hi);
    const double ratio = crossing / (Gamma / 210.0);
    ValidationRecord rec{"crossing Gamma12 vs Gamma/210", Gamma / 210.0,
                         crossing, 2.0, ratio >= 0.5 && ratio <= 2.0,
                         "pass within a factor of tolerance"};
    recs.push_back(rec);
  }
  return finish(10, "instability threshold", std::move(recs));
}

// 11. closed-form identities
CriterionResult oracle_identities() {
  using namespace closedform;
  std::vector<ValidationRecord> recs;
  const double gamma = 0.06;
  double e_vac = 0.0, e_drv = 0.0, e_pair = 0.0, e_r0 = 0.0, e_sign = 0.0;
  for (int k = 1; k <= 20; ++k) {
    const double dc = 0.1 * k;
    const double wg = omega_lt_max(dc, gamma) / gamma;
    for (double r : {0.0, 0.5, 1.0, 2.0, 3.0}) {
      for (double th : theta_grid(16)) {
        const double c = std::cos(th), s = std::sin(th);
        const double want = c * c * std::exp(2 * r) + s * s * std::exp(-2 * r);
        e_vac = std::max(e_vac, std::abs(limit_spectrum_vacuum(wg, dc, r, th) - want) / want);
        const auto [probe, pump] = quadrature_at_ltmax(th, r, dc);
        const auto shifted = quadrature_at_ltmax(th + 0.5 * kPi, r, dc);
        e_pair = std::max(e_pair, std::abs(probe - shifted.second) / probe);
        e_pair = std::max(e_pair, std::abs(pump - shifted.first) / pump);
      }
      const double q0 = quadrature_at_ltmax(0.0, r, dc).first;
      e_drv = std::max(e_drv, std::abs(limit_spectrum_driven_theta0(wg, dc, r) - q0) / q0);
    }
    for (double wg2 : {0.0, 0.3, 1.0, 5.0}) {
      e_r0 = std::max(e_r0, std::abs(limit_spectrum_vacuum(wg2, dc, 0.0, 0.7) - 1.0));
      e_r0 = std::max(e_r0, std::abs(limit_spectrum_driven_theta0(wg2, dc, 0.0) - 1.0));
      e_r0 = std::max(e_r0, std::abs(quadrature_at_ltmax(0.9, 0.0, dc).first - 1.0));
    }
  }
  for (double delta : {0.0, 1.0, 10.0, 100.0}) {
    e_sign = std::min({e_sign, omega_gt_max(delta, 1.0, 25.0, false),
                       omega_gt_max(delta, 1.0, 25.0, true),
                       omega_lt_max(delta / 416.0 + 1e-9, gamma)});
  }
  recs.push_back(compare_absolute("limit_spectrum_vacuum(omega_lt_max) rotation identity",
                                  e_vac, 0.0, 1e-12));
  recs.push_back(compare_absolute("limit_spectrum_driven_theta0(omega_lt_max) = quadrature_at_ltmax(0)",
                                  e_drv, 0.0, 1e-12));
  recs.push_back(compare_absolute("quadrature_at_ltmax probe(theta) = pump(theta + pi/2)", e_pair, 0.0, 1e-12));
  recs.push_back(compare_absolute("r = 0 fixed points", e_r0, 0.0, 1e-12));
  recs.push_back(require_above("omega_lt_max, omega_gt_max >= 0 for delta >= 0", e_sign, -1e-300));

  double e_dec = 0.0;
  const double C = 0.005 * 0.005 * 1e6 / gamma;
  for (double G12 : {0.0, 1e-5, 1e-4, 5e-4, 1e-3}) {
    for (double delta : {0.0, 1.0, 2.0, 5.0}) {
      e_dec = std::max(e_dec, std::abs(decoherence_w0(0.0, 0.0, 1.0, 1.0, G12, delta, C) - 1.0));
    }
  }
  recs.push_back(compare_absolute("decoherence_w0(r=0) within 1e-3 of 1", 1.0 + e_dec, 1.0, 1e-3));
  return finish(11, "closed-form identity suite", std::move(recs));
}

// 12. numerical hygiene
CriterionResult numerical_hygiene() {
  std::vector<ValidationRecord> recs;
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst_fd = 0.0;
  for (int draw = 0; draw < 20; ++draw) {
    ModelParams p = vacuum_probe_set(10.0 * u(rng), 1e-3 * u(rng));
    p.g1 = p.g2 = -0.005 * (0.8 + 0.4 * u(rng));
    p.gamma1 = p.gamma2 = 0.06 * (0.5 + u(rng));
    p.N = 1e6 * (0.5 + u(rng));
    p.alpha1 = std::polar(200.0 * (0.5 + u(rng)), 2.0 * kPi * u(rng));
    p.alpha2 = std::polar(200.0 * u(rng), 2.0 * kPi * u(rng));
    const SteadyState ss = solve_steady_state(p);
    const DriftMatrix A = drift_partials(p, ss.mean);
    worst_fd = std::max(worst_fd, checks::relative_matrix_error(
                                      checks::finite_difference_jacobian(p, ss.mean), A));
  }
  recs.push_back(compare_absolute("Jacobian vs finite differences (20 draws)", worst_fd, 0.0, 1e-6));

  const std::vector<ModelParams> configs = {
      vacuum_probe_set(0.0),        vacuum_probe_set(2.0),
      vacuum_probe_set(100.0),      driven_probe_set(0.0),
      driven_probe_set(40.0),       driven_probe_set(0.0, 5e-4),
      driven_probe_set(5.0, 1e-4),  vacuum_probe_set(2.0, 1e-4)};
  double e_conj = 0.0, e_herm = 0.0, e_imag = 0.0, e_comm = 0.0;
  double min_value = std::numeric_limits<double>::infinity();
  double min_heis = std::numeric_limits<double>::infinity();
  std::vector<double> omegas;
  for (int k = 0; k < 40; ++k) omegas.push_back(1e-3 * std::pow(2e4, k / 39.0));
  for (const auto& p : configs) {
    const SpectrumEvaluator ev = build_evaluator(p);
    e_conj = std::max({e_conj, checks::conjugate_symmetry_error(ev.model().A),
                       checks::coupling_symmetry_error(ev.model().B)});
    e_herm = std::max(e_herm, checks::hermiticity_error(ev.correlations().C));
    for (double w : omegas) {
      for (int mode : {1, 2}) {
        e_comm = std::max(e_comm, std::abs(checks::output_commutator(ev, w, mode) - 1.0));
        const OutputRows rows = ev.output_rows(w, mode);
        for (double th : theta_grid(8)) {
          const cplx s = ev.contract(rows, th);
          const cplx s90 = ev.contract(rows, th + 0.5 * kPi);
          e_imag = std::max(e_imag, std::abs(s.imag()) / std::max(1.0, std::abs(s)));
          min_value = std::min(min_value, s.real());
          min_heis = std::min(min_heis, s.real() * s90.real());
        }
      }
    }
  }
  recs.push_back(compare_absolute("drift/coupling conjugate symmetry", e_conj, 0.0, 1e-14));
  recs.push_back(compare_absolute("input correlation Hermiticity", e_herm, 0.0, 1e-14));
  recs.push_back(compare_absolute("spectrum imaginary part", e_imag, 0.0, 1e-10));
  recs.push_back(require_above("spectrum nonnegative (min value)", min_value, 0.0));
  recs.push_back(require_above("Heisenberg product S(theta)S(theta+pi/2)", min_heis, 1.0 - 1e-8));
  recs.push_back(compare_absolute("output commutator [a_out, a_out+] - 1", e_comm, 0.0, 1e-6));
  return finish(12, "numerical hygiene", std::move(recs));
}

}  // namespace

ValidationRecord compare_to_closed_form(std::string name, double numeric,
                                        double oracle, double rel_tol,
                                        std::string regime) {
  ValidationRecord rec{std::move(name), oracle, numeric, rel_tol, false,
                       "relative tolerance"};
  rec.pass = std::abs(numeric - oracle) <= rel_tol * std::abs(oracle);
  if (!regime.empty()) rec.note += "; " + regime;
  return rec;
}

ValidationRecord compare_absolute(std::string name, double numeric,
                                  double expected, double abs_tol) {
  return {std::move(name), expected, numeric, abs_tol,
          std::abs(numeric - expected) <= abs_tol, "absolute tolerance"};
}

ValidationRecord require_below(std::string name, double observed, double bound) {
  return {std::move(name), bound, observed, 0.0, observed < bound,
          "observed < expected"};
}

ValidationRecord require_above(std::string name, double observed, double bound) {
  return {std::move(name), bound, observed, 0.0, observed >= bound,
          "observed >= expected"};
}

std::string regime_note(const closedform::ClosedFormInput& in, bool driven) {
  const auto reg = closedform::check_regime(in);
  std::string note;
  auto add = [&](const char* what) {
    note += note.empty() ? "RegimeViolation: " : ", ";
    note += what;
  };
  if (!reg.gamma_small) add("gamma << Gamma");
  if (!reg.delta_large) add("delta^2 >> 4 C Gamma");
  if (driven && !reg.cooperativity_ok) add("C gamma >> Omega^2");
  return note;
}

ModelParams vacuum_probe_set(double delta, double Gamma12) {
  ModelParams p;
  p.Gamma1 = p.Gamma2 = 1.0;
  p.gamma1 = p.gamma2 = 0.06;
  p.g1 = p.g2 = -0.005;
  p.N = 1e6;
  p.r = 2.0;
  p.alpha1 = 1.0 / p.g1;  // Omega1 = g alpha1 = 1
  p.alpha2 = 0.0;
  p.delta = delta;
  p.Gamma12 = Gamma12;
  return p;
}

ModelParams driven_probe_set(double delta, double Gamma12) {
  ModelParams p = vacuum_probe_set(delta, Gamma12);
  p.alpha2 = 1.0 / p.g2;
  return p;
}

CriterionResult run_criterion(int id) {
  switch (id) {
    case 1: return vacuum_normalization();
    case 2: return empty_cavity_squeezing();
    case 3: return coherent_preservation();
    case 4: return normal_splitting_peak();
    case 5: return low_frequency_rotation();
    case 6: return driven_peak_value();
    case 7: return squeezing_transfer();
    case 8: return decoherence_destroys_transfer();
    case 9: return delta_sensitivity();
    case 10: return instability_threshold();
    case 11: return oracle_identities();
    case 12: return numerical_hygiene();
    default:
      throw Error(ErrorCode::kDomainError, "unknown criterion " + std::to_string(id));
  }
}

ValidationReport run_acceptance_suite() {
  const auto start = std::chrono::steady_clock::now();
  ValidationReport rep;
  for (int id = 1; id <= kCriterionCount; ++id) rep.criteria.push_back(run_criterion(id));
  rep.pass = std::all_of(rep.criteria.begin(), rep.criteria.end(),
                         [](const auto& c) { return c.pass; });
  rep.runtime_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

}  // namespace ceit::validation
