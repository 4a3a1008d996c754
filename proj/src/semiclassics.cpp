#include "ceit/semiclassics.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Cholesky>
#include <Eigen/LU>

#include "ceit/error.hpp"

namespace ceit {

Eigen::Matrix3cd MeanState::density_matrix() const {
  Eigen::Matrix3cd rho;
  rho(0, 0) = p00();
  rho(1, 1) = p11();
  rho(2, 2) = p22();
  rho(0, 1) = s10;
  rho(1, 0) = std::conj(s10);
  rho(0, 2) = s20;
  rho(2, 0) = std::conj(s20);
  rho(1, 2) = s21;
  rho(2, 1) = std::conj(s21);
  return rho;
}

MeanState MeanState::from_density_matrix(const Eigen::Matrix3cd& rho, cplx a1,
                                         cplx a2) {
  MeanState m;
  m.a1 = a1;
  m.a2 = a2;
  m.s10 = rho(0, 1);
  m.s20 = rho(0, 2);
  m.s21 = rho(1, 2);
  m.w1 = rho(0, 0).real() - rho(1, 1).real();
  m.w2 = rho(0, 0).real() - rho(2, 2).real();
  return m;
}

bool MeanState::physical(double tol) const {
  const double p[3] = {p00(), p11(), p22()};
  for (double v : p) {
    if (v < -tol || v > 1.0 + tol) return false;
  }
  auto ok = [&](cplx s, double pa, double pb) {
    return std::norm(s) <= std::max(pa, 0.0) * std::max(pb, 0.0) + tol;
  };
  return ok(s10, p[1], p[0]) && ok(s20, p[2], p[0]) && ok(s21, p[2], p[1]);
}

MeanState dark_state_seed(const ModelParams& p) {
  if (p.alpha1 == 0.0 && p.alpha2 == 0.0) {
    throw Error(ErrorCode::kZeroDrive, "alpha1 and alpha2 are both zero");
  }
  cplx c1 = p.g2 * p.alpha2;
  cplx c2 = -p.g1 * p.alpha1;
  if (std::norm(c1) + std::norm(c2) == 0.0) {
    // Uncoupled atoms: every ground state is dark, keep the g1 == g2 limit.
    c1 = p.alpha2;
    c2 = -p.alpha1;
  }
  const double n2 = std::norm(c1) + std::norm(c2);
  MeanState m;
  m.a1 = p.alpha1;
  m.a2 = p.alpha2;
  m.w1 = -std::norm(c1) / n2;
  m.w2 = -std::norm(c2) / n2;
  m.s21 = std::conj(c2) * c1 / n2;
  return m;
}

namespace {

double optical_damping(const ModelParams& p) {
  const double extra = p.literal_mode ? 0.0 : 0.25 * p.Gamma12;
  return 0.5 * (p.Gamma1 + p.Gamma2) + extra;
}

}  // namespace

MeanDrift mean_drift(const ModelParams& p, const MeanState& m,
                     const Drives& drives) {
  const cplx a1 = m.a1, a2 = m.a2;
  const cplx a1d = std::conj(a1), a2d = std::conj(a2);
  const cplx s01 = std::conj(m.s10), s02 = std::conj(m.s20);
  const cplx s12 = std::conj(m.s21);
  const cplx optical = kI * p.delta - optical_damping(p);
  const double one_w = 1.0 + m.w1 + m.w2;

  MeanDrift d;
  d.a1 = -kI * p.g1 * p.N * m.s10 - 0.5 * p.gamma1 * a1 +
         std::sqrt(p.gamma1) * drives.drive1;
  d.a2 = -kI * p.g2 * p.N * m.s20 - 0.5 * p.gamma2 * a2 +
         std::sqrt(p.gamma2) * drives.drive2;
  d.s10 = optical * m.s10 + kI * p.g1 * m.w1 * a1 - kI * p.g2 * s12 * a2;
  d.s20 = optical * m.s20 + kI * p.g2 * m.w2 * a2 - kI * p.g1 * m.s21 * a1;
  d.s21 = -p.Gamma12 * m.s21 - kI * p.g1 * a1d * m.s20 + kI * p.g2 * s01 * a2;
  // pump and probe exchange terms, each of the form i g (a+ s_i0 - s_0i a)
  const cplx x1 = kI * p.g1 * (a1d * m.s10 - s01 * a1);
  const cplx x2 = kI * p.g2 * (a2d * m.s20 - s02 * a2);
  d.w1 = (-(2.0 * p.Gamma1 + p.Gamma2) / 3.0 * one_w + 2.0 * x1 + x2).real();
  d.w2 = (-(p.Gamma1 + 2.0 * p.Gamma2) / 3.0 * one_w + x1 + 2.0 * x2).real();
  return d;
}

Drives required_drive(const ModelParams& p, const MeanState& m) {
  auto one = [&](double gamma, double g, cplx alpha, cplx s) -> cplx {
    const cplx num = 0.5 * gamma * alpha + kI * g * p.N * s;
    if (gamma == 0.0) {
      if (num != 0.0) {
        throw Error(ErrorCode::kDomainError,
                    "cannot sustain a nonzero mean with gamma = 0");
      }
      return 0.0;
    }
    return num / std::sqrt(gamma);
  };
  return {one(p.gamma1, p.g1, m.a1, m.s10), one(p.gamma2, p.g2, m.a2, m.s20)};
}

DriftMatrix drift_partials(const ModelParams& p, const MeanState& m) {
  constexpr std::size_t a1 = idx(Var::kA1), a2 = idx(Var::kA2);
  constexpr std::size_t S10 = idx(Var::kS10), S20 = idx(Var::kS20);
  constexpr std::size_t S21 = idx(Var::kS21), W1 = idx(Var::kW1);
  constexpr std::size_t W2 = idx(Var::kW2), a1d = idx(Var::kA1d);
  constexpr std::size_t a2d = idx(Var::kA2d), S01 = idx(Var::kS01);
  constexpr std::size_t S02 = idx(Var::kS02), S12 = idx(Var::kS12);

  // collective steady-state coefficients
  const cplx A1 = m.a1, A2 = m.a2;
  const cplx A1d = std::conj(A1), A2d = std::conj(A2);
  const cplx bS10 = p.N * m.s10, bS20 = p.N * m.s20, bS21 = p.N * m.s21;
  const cplx bS01 = std::conj(bS10), bS02 = std::conj(bS20);
  const cplx bS12 = std::conj(bS21);
  const double bW1 = p.N * m.w1, bW2 = p.N * m.w2;
  const double g1 = p.g1, g2 = p.g2;
  const cplx optical = kI * p.delta - optical_damping(p);

  DriftMatrix A = DriftMatrix::Zero();
  A(a1, a1) = -0.5 * p.gamma1;
  A(a1, S10) = -kI * g1;
  A(a2, a2) = -0.5 * p.gamma2;
  A(a2, S20) = -kI * g2;

  A(S10, S10) = optical;
  A(S10, a1) = kI * g1 * bW1;
  A(S10, W1) = kI * g1 * A1;
  A(S10, a2) = -kI * g2 * bS12;
  A(S10, S12) = -kI * g2 * A2;

  A(S20, S20) = optical;
  A(S20, a2) = kI * g2 * bW2;
  A(S20, W2) = kI * g2 * A2;
  A(S20, a1) = -kI * g1 * bS21;
  A(S20, S21) = -kI * g1 * A1;

  A(S21, S21) = -p.Gamma12;
  A(S21, a1d) = -kI * g1 * bS20;
  A(S21, S20) = -kI * g1 * A1d;
  A(S21, a2) = kI * g2 * bS01;
  A(S21, S01) = kI * g2 * A2;

  // W rows: weight (2, 1) on the pump/probe exchange for W1, (1, 2) for W2.
  const double c1 = -(2.0 * p.Gamma1 + p.Gamma2) / 3.0;
  const double c2 = -(p.Gamma1 + 2.0 * p.Gamma2) / 3.0;
  const std::array<std::pair<std::size_t, std::array<double, 3>>, 2> wrows = {
      {{W1, {c1, 2.0, 1.0}}, {W2, {c2, 1.0, 2.0}}}};
  for (const auto& [row, w] : wrows) {
    A(row, W1) = w[0];
    A(row, W2) = w[0];
    A(row, S01) = -w[1] * kI * g1 * A1;
    A(row, a1) = -w[1] * kI * g1 * bS01;
    A(row, a1d) = w[1] * kI * g1 * bS10;
    A(row, S10) = w[1] * kI * g1 * A1d;
    A(row, S02) = -w[2] * kI * g2 * A2;
    A(row, a2) = -w[2] * kI * g2 * bS02;
    A(row, a2d) = w[2] * kI * g2 * bS20;
    A(row, S20) = w[2] * kI * g2 * A2d;
  }

  // adjoint rows mirror the operator rows
  for (std::size_t i : {a1, a2, S10, S20, S21}) {
    for (std::size_t j = 0; j < kDim; ++j) {
      A(var_adjoint(i), var_adjoint(j)) = std::conj(A(i, j));
    }
  }
  return A;
}

double drift_residual(const ModelParams& p, const MeanState& m,
                      const Drives& drives) {
  const MeanDrift d = mean_drift(p, m, drives);
  const double scale = p.rate_scale();
  double atomic = std::max({std::abs(d.s10), std::abs(d.s20), std::abs(d.s21),
                            std::abs(d.w1), std::abs(d.w2)});
  const double field_scale =
      scale * std::max({1.0, std::abs(m.a1), std::abs(m.a2)});
  double field = std::max(std::abs(d.a1), std::abs(d.a2));
  return std::max(atomic / scale, field / field_scale);
}

namespace {

using Vec8 = Eigen::Matrix<double, 8, 1>;
using Mat8 = Eigen::Matrix<double, 8, 8>;

Vec8 pack(const MeanState& m) {
  Vec8 x;
  x << m.s10.real(), m.s10.imag(), m.s20.real(), m.s20.imag(), m.s21.real(),
      m.s21.imag(), m.w1, m.w2;
  return x;
}

MeanState unpack(const Vec8& x, const MeanState& fields) {
  MeanState m = fields;
  m.s10 = {x(0), x(1)};
  m.s20 = {x(2), x(3)};
  m.s21 = {x(4), x(5)};
  m.w1 = x(6);
  m.w2 = x(7);
  return m;
}

// Atomic part of the per-atom drift with the fields held at their targets.
Vec8 atomic_residual(const ModelParams& p, const MeanState& m) {
  const MeanDrift d = mean_drift(p, m, Drives{});
  Vec8 r;
  r << d.s10.real(), d.s10.imag(), d.s20.real(), d.s20.imag(), d.s21.real(),
      d.s21.imag(), d.w1, d.w2;
  return r;
}

// Real 8x8 Jacobian assembled from the complex partials: for a column pair
// (z, conj z) with z = x + i y, df/dx = A_z + A_zbar, df/dy = i (A_z - A_zbar).
Mat8 atomic_jacobian(const ModelParams& p, const MeanState& m) {
  const DriftMatrix A = drift_partials(p, m);
  const std::array<std::size_t, 3> zs = {idx(Var::kS10), idx(Var::kS20),
                                         idx(Var::kS21)};
  const std::array<std::size_t, 2> ws = {idx(Var::kW1), idx(Var::kW2)};
  Mat8 J;
  auto fill_row = [&](int re_row, int im_row, std::size_t eq) {
    for (int k = 0; k < 3; ++k) {
      const cplx dz = A(eq, zs[k]);
      const cplx dzb = A(eq, var_adjoint(zs[k]));
      const cplx dx = dz + dzb;
      const cplx dy = kI * (dz - dzb);
      J(re_row, 2 * k) = dx.real();
      J(re_row, 2 * k + 1) = dy.real();
      if (im_row >= 0) {
        J(im_row, 2 * k) = dx.imag();
        J(im_row, 2 * k + 1) = dy.imag();
      }
    }
    for (int k = 0; k < 2; ++k) {
      J(re_row, 6 + k) = A(eq, ws[k]).real();
      if (im_row >= 0) J(im_row, 6 + k) = A(eq, ws[k]).imag();
    }
  };
  for (int k = 0; k < 3; ++k) fill_row(2 * k, 2 * k + 1, zs[k]);
  fill_row(6, -1, ws[0]);
  fill_row(7, -1, ws[1]);
  return J;
}

}  // namespace

SteadyState solve_steady_state(const ModelParams& p,
                               const NewtonOptions& opts) {
  MeanState m = dark_state_seed(p);
  const double scale = p.rate_scale();
  auto norm_of = [&](const MeanState& s) {
    return atomic_residual(p, s).lpNorm<Eigen::Infinity>() / scale;
  };

  double res = norm_of(m);
  int it = 0;
  while (res >= opts.tolerance) {
    if (it >= opts.max_iterations) {
      throw Error(ErrorCode::kNoConvergence,
                  "Newton iteration did not reach the residual tolerance");
    }
    ++it;
    const Mat8 J = atomic_jacobian(p, m);
    const Vec8 r = atomic_residual(p, m);
    Vec8 step;
    Eigen::FullPivLU<Mat8> lu(J);
    if (lu.isInvertible()) {
      step = -lu.solve(r);
    } else {
      const double jn = std::max(J.norm(), 1e-300);
      const Mat8 normal =
          J.transpose() * J + opts.tikhonov * jn * jn * Mat8::Identity();
      step = -normal.ldlt().solve(J.transpose() * r);
    }
    if (!step.allFinite()) {
      throw Error(ErrorCode::kSingularJacobian,
                  "Newton step is not finite; Jacobian is rank-deficient");
    }

    const Vec8 x0 = pack(m);
    double t = 1.0;
    bool accepted = false;
    for (int halving = 0; halving < 40; ++halving, t *= 0.5) {
      const MeanState trial = unpack(x0 + t * step, m);
      if (!trial.physical()) continue;
      const double trial_res = norm_of(trial);
      if (trial_res < res || trial_res < opts.tolerance) {
        m = trial;
        res = trial_res;
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      throw Error(lu.isInvertible() ? ErrorCode::kNoConvergence
                                    : ErrorCode::kSingularJacobian,
                  "no admissible Newton step reduces the residual");
    }
  }

  SteadyState ss;
  ss.mean = m;
  ss.drives = required_drive(p, m);
  ss.residual = drift_residual(p, m, ss.drives);
  ss.iterations = it;
  return ss;
}

}  // namespace ceit
