#pragma once

#include <utility>

#include "ceit/model.hpp"

// Analytic results for the symmetric configuration (Gamma1 = Gamma2 = Gamma,
// gamma1 = gamma2 = gamma, g1 = g2 = g). These are transcribed formulas used
// as independent oracles for the numerical engine; nothing here touches the
// linearized model.
namespace ceit::closedform {

struct ClosedFormInput {
  double r = 0.0;
  double theta = 0.0;
  double delta_c = 0.0;
  double omega_gamma = 0.0;  // omega / gamma
  double C = 0.0;
  double Omega = 0.0;
  double Ng2 = 0.0;  // g^2 N
  double delta = 0.0;
  double Gamma = 1.0;
  double Gamma12 = 0.0;
  double gamma = 0.0;

  // delta_c == delta / C to relative precision `tol` (when C != 0).
  bool consistent(double tol = 1e-12) const;
};

// Builds the input from model parameters at spectral frequency `omega`,
// using the pump Rabi amplitude |g alpha1| as Omega.
ClosedFormInput from_params(const ModelParams& p, double omega = 0.0,
                            double theta = 0.0);

// Upper normal-mode peak: (delta + sqrt(k Omega^2 + 4 N g^2 + delta^2)) / 2,
// k = 4 for a vacuum probe and k = 8 for a driven probe.
double omega_gt_max(double delta, double Omega, double Ng2, bool driven);

// Lower peak gamma sqrt(4 - dc^2) / (2 dc) for dc <= 2, zero above.
double omega_lt_max(double delta_c, double gamma);

// N -> infinity probe spectrum with a vacuum-squeezed probe.
double limit_spectrum_vacuum(double omega_gamma, double delta_c, double r,
                             double theta);

// N -> infinity theta = 0 probe spectrum when both modes are driven.
double limit_spectrum_driven_theta0(double omega_gamma, double delta_c,
                                    double r);

// Probe and pump quadrature noise at omega_lt_max for the driven case;
// pump(theta) = probe(theta + pi/2). DomainError for delta_c > 2.
std::pair<double, double> quadrature_at_ltmax(double theta, double r,
                                              double delta_c);

// Squeezing-exchange frequency gamma g alpha / (sqrt 2 sqrt(g^2 N / Gamma +
// 2 g^2 alpha^2)), evaluated exactly as written (Gamma is the unit).
double omega_sq(double gamma, double g, double alpha, double Ng2_over_Gamma);

// omega = 0 probe noise with a vacuum probe and ground-state dephasing.
// theta_sel must be 0 or pi/2; the pi/2 quadrature is the r -> -r image.
double decoherence_w0(double r, double theta_sel, double Omega, double Gamma,
                      double Gamma12, double delta, double C);

// Validity flags for the large-N limit expressions.
struct Regime {
  bool gamma_small = false;       // gamma << Gamma
  bool delta_large = false;       // delta^2 >> 4 C Gamma
  bool cooperativity_ok = false;  // C gamma >> Omega^2 (driven probe)
};
Regime check_regime(const ClosedFormInput& in, double margin = 10.0);

}  // namespace ceit::closedform
