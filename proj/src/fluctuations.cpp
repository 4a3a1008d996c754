#include "ceit/fluctuations.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "ceit/error.hpp"

namespace ceit {

LinearModel drift_jacobian(const ModelParams& p, const SteadyState& ss) {
  LinearModel lm;
  lm.params = p;
  lm.ss = ss;
  lm.A = drift_partials(p, ss.mean);
  lm.B = NoiseCoupling::Zero();
  const double s1 = std::sqrt(p.gamma1), s2 = std::sqrt(p.gamma2);
  lm.B(idx(Var::kA1), idx(Noise::kA1in)) = s1;
  lm.B(idx(Var::kA2), idx(Noise::kA2in)) = s2;
  lm.B(idx(Var::kA1d), idx(Noise::kA1inD)) = s1;
  lm.B(idx(Var::kA2d), idx(Noise::kA2inD)) = s2;
  for (std::size_t i = 0; i < kDim; ++i) {
    const bool cavity = i == idx(Var::kA1) || i == idx(Var::kA2) ||
                        i == idx(Var::kA1d) || i == idx(Var::kA2d);
    if (!cavity) lm.B(i, noise_for_var(i)) = 1.0;
  }
  return lm;
}

double marginal_threshold(const ModelParams& p) {
  return 1e-10 * std::max(1.0, p.rate_scale());
}

double instability_threshold(const ModelParams& p) {
  return 1e-8 * p.rate_scale();
}

StabilityReport analyze_stability(const LinearModel& lm) {
  Eigen::ComplexEigenSolver<DriftMatrix> es(lm.A, /*computeEigenvectors=*/false);
  StabilityReport rep;
  rep.max_real = -std::numeric_limits<double>::infinity();
  const double marginal = marginal_threshold(lm.params);
  for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) {
    const cplx lambda = es.eigenvalues()(k);
    rep.eigenvalues.push_back(lambda);
    rep.max_real = std::max(rep.max_real, lambda.real());
    if (std::abs(lambda.real()) < marginal) rep.marginal.push_back(lambda);
  }
  std::sort(rep.eigenvalues.begin(), rep.eigenvalues.end(),
            [](cplx a, cplx b) {
              return a.real() != b.real() ? a.real() > b.real()
                                          : a.imag() < b.imag();
            });
  return rep;
}

StabilityReport stability_check(const LinearModel& lm) {
  StabilityReport rep = analyze_stability(lm);
  if (rep.max_real > instability_threshold(lm.params)) {
    std::ostringstream msg;
    msg << "linearized drift has an eigenvalue with real part "
        << rep.max_real;
    throw Error(ErrorCode::kUnstable, msg.str());
  }
  return rep;
}

}  // namespace ceit
