#pragma once

#include <vector>

#include <Eigen/Core>

#include "ceit/model.hpp"
#include "ceit/semiclassics.hpp"

namespace ceit {

using NoiseCoupling = Eigen::Matrix<cplx, 12, 12>;

// Linearized quantum Langevin system d(dX)/dt = A dX + B xi around a steady
// state. Rows/columns of A follow Var, columns of B follow Noise.
struct LinearModel {
  ModelParams params;
  SteadyState ss;
  DriftMatrix A;
  NoiseCoupling B;
};

struct StabilityReport {
  std::vector<cplx> eigenvalues;
  double max_real = 0.0;
  std::vector<cplx> marginal;  // |Re| below the marginal threshold
};

LinearModel drift_jacobian(const ModelParams& p, const SteadyState& ss);

// Eigen-analysis only; never throws.
StabilityReport analyze_stability(const LinearModel& lm);

// Same as analyze_stability but raises Unstable when
// max_real > 1e-8 * rate_scale().
StabilityReport stability_check(const LinearModel& lm);

double marginal_threshold(const ModelParams& p);
double instability_threshold(const ModelParams& p);

}  // namespace ceit
