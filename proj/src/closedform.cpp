#include "ceit/closedform.hpp"

#include <cmath>
#include <numbers>

#include "ceit/error.hpp"

namespace ceit::closedform {

bool ClosedFormInput::consistent(double tol) const {
  if (C == 0.0) return delta == 0.0 || delta_c == 0.0;
  return std::abs(delta_c - delta / C) <= tol * std::max(1.0, std::abs(delta_c));
}

ClosedFormInput from_params(const ModelParams& p, double omega, double theta) {
  const DerivedQuantities d = derived_quantities(p);
  ClosedFormInput in;
  in.r = p.r;
  in.theta = theta;
  in.C = d.C;
  in.delta_c = d.delta_c;
  in.delta = p.delta;
  in.gamma = p.gamma1;
  in.omega_gamma = omega / p.gamma1;
  in.Omega = std::abs(d.Omega1);
  in.Ng2 = p.g1 * p.g1 * p.N;
  in.Gamma = p.Gamma1;
  in.Gamma12 = p.Gamma12;
  return in;
}

double omega_gt_max(double delta, double Omega, double Ng2, bool driven) {
  const double k = driven ? 8.0 : 4.0;
  return 0.5 * (delta + std::sqrt(k * Omega * Omega + 4.0 * Ng2 + delta * delta));
}

double omega_lt_max(double delta_c, double gamma) {
  if (delta_c > 2.0) return 0.0;
  return gamma * std::sqrt(4.0 - delta_c * delta_c) / (2.0 * delta_c);
}

namespace {

double m_factor(double wg, double dc) {
  const double q = 4.0 * wg * wg + 1.0;
  return 16.0 + q * q * std::pow(dc, 4) + 8.0 * (1.0 - 4.0 * wg * wg) * dc * dc;
}

}  // namespace

double limit_spectrum_vacuum(double omega_gamma, double delta_c, double r,
                             double theta) {
  const double q = 4.0 * omega_gamma * omega_gamma + 1.0;
  const double c = std::cos(theta), s = std::sin(theta);
  const double x = c * (delta_c * delta_c * q - 4.0) - 4.0 * s * delta_c;
  const double y = 4.0 * c * delta_c + s * (delta_c * delta_c * q - 4.0);
  return (std::exp(-2.0 * r) * x * x + std::exp(2.0 * r) * y * y) /
         m_factor(omega_gamma, delta_c);
}

double limit_spectrum_driven_theta0(double omega_gamma, double delta_c,
                                    double r) {
  const double w2 = omega_gamma * omega_gamma;
  const double q = 4.0 * w2 + 1.0;
  const double dc2 = delta_c * delta_c;
  const double R = q * m_factor(omega_gamma, delta_c);
  const double num = 4.0 * std::exp(2.0 * r) * q * dc2 +
                     4.0 * (q * dc2 + 4.0) +
                     std::exp(-2.0 * r) * (q * q * q * dc2 * dc2 -
                                           32.0 * (4.0 * w2 * w2 + w2) * dc2 +
                                           64.0 * w2);
  return num / R;
}

std::pair<double, double> quadrature_at_ltmax(double theta, double r,
                                              double delta_c) {
  if (delta_c > 2.0) {
    throw Error(ErrorCode::kDomainError, "quadrature_at_ltmax needs delta_c <= 2");
  }
  auto probe = [&](double th) {
    const double sum = std::exp(-r) + std::exp(r);
    return 0.25 * (sum * sum + (std::exp(2.0 * r) - std::exp(-2.0 * r)) *
                                   std::cos(th) * std::sin(th) * delta_c);
  };
  return {probe(theta), probe(theta + 0.5 * std::numbers::pi)};
}

double omega_sq(double gamma, double g, double alpha, double Ng2_over_Gamma) {
  return gamma * g * alpha /
         (std::sqrt(2.0) * std::sqrt(Ng2_over_Gamma + 2.0 * g * g * alpha * alpha));
}

double decoherence_w0(double r, double theta_sel, double Omega, double Gamma,
                      double Gamma12, double delta, double C) {
  if (theta_sel != 0.0) {
    if (std::abs(theta_sel - 0.5 * std::numbers::pi) > 1e-12) {
      throw Error(ErrorCode::kDomainError, "theta_sel must be 0 or pi/2");
    }
    r = -r;
  }
  const double O2 = Omega * Omega;
  const double G12sq = Gamma12 * Gamma12;
  const double base = O2 + 2.0 * C * Gamma12 + Gamma * Gamma12;
  const double B = delta * delta * G12sq + base * base;
  const double inner = O2 * O2 - 4.0 * C * C * G12sq + 2.0 * O2 * Gamma * Gamma12 +
                       (Gamma * Gamma + delta * delta) * G12sq;
  return (16.0 * std::exp(2.0 * r) * C * C * delta * delta * G12sq * G12sq +
          std::exp(-2.0 * r) * inner * inner) /
             (B * B) +
         8.0 * C * Gamma12 * (O2 + Gamma * Gamma12) / B;
}

Regime check_regime(const ClosedFormInput& in, double margin) {
  Regime reg;
  reg.gamma_small = margin * in.gamma <= in.Gamma;
  reg.delta_large = in.delta * in.delta >= margin * 4.0 * in.C * in.Gamma;
  reg.cooperativity_ok = in.C * in.gamma >= margin * in.Omega * in.Omega;
  return reg;
}

}  // namespace ceit::closedform
