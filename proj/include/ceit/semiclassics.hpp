#pragma once

#include <Eigen/Core>

#include "ceit/model.hpp"

namespace ceit {

// Per-atom mean values (collective = N x these) plus the intracavity means.
// W_i = S00 - S_ii, so p00 = (1 + w1 + w2) / 3 and p_ii = p00 - w_i.
struct MeanState {
  cplx a1, a2;
  cplx s10, s20, s21;
  double w1 = 0.0;
  double w2 = 0.0;

  double p00() const { return (1.0 + w1 + w2) / 3.0; }
  double p11() const { return p00() - w1; }
  double p22() const { return p00() - w2; }

  // Single-atom density matrix, rho(j, i) = <sigma_ij>.
  Eigen::Matrix3cd density_matrix() const;
  static MeanState from_density_matrix(const Eigen::Matrix3cd& rho, cplx a1,
                                       cplx a2);

  // True when populations lie in [0, 1] and |s_ij|^2 <= p_ii p_jj (+tol).
  bool physical(double tol = 1e-9) const;
};

// Time derivative of a MeanState; same layout, with w fields holding dw/dt.
using MeanDrift = MeanState;

struct Drives {
  cplx drive1, drive2;  // <a_in> for pump and probe
};

struct SteadyState {
  MeanState mean;
  Drives drives;
  double residual = 0.0;  // max-norm of the drift, relative to rate_scale()
  int iterations = 0;
};

struct NewtonOptions {
  int max_iterations = 200;
  double tolerance = 1e-10;
  double tikhonov = 1e-12;
};

// Population-trapping state: no excited population, ground amplitudes
// proportional to (g2 alpha2, -g1 alpha1). Stationary whenever Gamma12 = 0.
MeanState dark_state_seed(const ModelParams& p);

MeanDrift mean_drift(const ModelParams& p, const MeanState& m,
                     const Drives& drives);

Drives required_drive(const ModelParams& p, const MeanState& m);

SteadyState solve_steady_state(const ModelParams& p,
                               const NewtonOptions& opts = {});

// Analytic partial derivatives of the doubled-space drift (collective
// variables, VariableOrder rows and columns) evaluated at `m`. Entry (i, j)
// is d(dX_i/dt)/dX_j with adjoint variables treated as independent.
using DriftMatrix = Eigen::Matrix<cplx, 12, 12>;
DriftMatrix drift_partials(const ModelParams& p, const MeanState& m);

// Scaled residual used for SteadyState::residual.
double drift_residual(const ModelParams& p, const MeanState& m,
                      const Drives& drives);

}  // namespace ceit
