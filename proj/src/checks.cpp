#include "ceit/checks.hpp"

#include <algorithm>
#include <cmath>

namespace ceit::checks {

namespace {

// Complex slots of MeanState in Var order (operator half) and their scale
// factors between per-atom and collective variables.
struct Slot {
  std::size_t var;
  bool real;
};
constexpr std::array<Slot, 7> kSlots = {{{idx(Var::kA1), false},
                                         {idx(Var::kA2), false},
                                         {idx(Var::kS10), false},
                                         {idx(Var::kS20), false},
                                         {idx(Var::kS21), false},
                                         {idx(Var::kW1), true},
                                         {idx(Var::kW2), true}}};

cplx* complex_slot(MeanState& m, std::size_t k) {
  switch (k) {
    case 0: return &m.a1;
    case 1: return &m.a2;
    case 2: return &m.s10;
    case 3: return &m.s20;
    case 4: return &m.s21;
    default: return nullptr;
  }
}

cplx get(const MeanState& m, std::size_t k) {
  switch (k) {
    case 0: return m.a1;
    case 1: return m.a2;
    case 2: return m.s10;
    case 3: return m.s20;
    case 4: return m.s21;
    case 5: return m.w1;
    default: return m.w2;
  }
}

MeanState shifted(MeanState m, std::size_t k, cplx dz) {
  if (k == 5) {
    m.w1 += dz.real();
  } else if (k == 6) {
    m.w2 += dz.real();
  } else {
    *complex_slot(m, k) += dz;
  }
  return m;
}

double collective_scale(std::size_t k, double N) { return k >= 2 ? N : 1.0; }

}  // namespace

DriftMatrix finite_difference_jacobian(const ModelParams& p, const MeanState& m,
                                       double rel_step) {
  const Drives drives = required_drive(p, m);
  DriftMatrix A = DriftMatrix::Zero();
  for (std::size_t j = 0; j < kSlots.size(); ++j) {
    const double h = rel_step * std::max(1.0, std::abs(get(m, j)));
    // d/dx and (for complex slots) d/dy of every drift component
    std::array<cplx, 7> dx{}, dy{};
    {
      const MeanDrift fp = mean_drift(p, shifted(m, j, h), drives);
      const MeanDrift fm = mean_drift(p, shifted(m, j, -h), drives);
      for (std::size_t i = 0; i < kSlots.size(); ++i)
        dx[i] = (get(fp, i) - get(fm, i)) / (2.0 * h);
    }
    if (!kSlots[j].real) {
      const MeanDrift fp = mean_drift(p, shifted(m, j, kI * h), drives);
      const MeanDrift fm = mean_drift(p, shifted(m, j, -kI * h), drives);
      for (std::size_t i = 0; i < kSlots.size(); ++i)
        dy[i] = (get(fp, i) - get(fm, i)) / (2.0 * h);
    }
    for (std::size_t i = 0; i < kSlots.size(); ++i) {
      const std::size_t vi = kSlots[i].var, vj = kSlots[j].var;
      const double s = collective_scale(i, p.N) / collective_scale(j, p.N);
      if (kSlots[j].real) {
        A(vi, vj) = s * dx[i];
        if (!kSlots[i].real) A(var_adjoint(vi), vj) = s * std::conj(dx[i]);
        continue;
      }
      const cplx dz = 0.5 * (dx[i] - kI * dy[i]);
      const cplx dzb = 0.5 * (dx[i] + kI * dy[i]);
      A(vi, vj) = s * dz;
      A(vi, var_adjoint(vj)) = s * dzb;
      if (!kSlots[i].real) {
        A(var_adjoint(vi), var_adjoint(vj)) = s * std::conj(dz);
        A(var_adjoint(vi), vj) = s * std::conj(dzb);
      }
    }
  }
  return A;
}

double relative_matrix_error(const DriftMatrix& A, const DriftMatrix& reference,
                             double floor) {
  const double scale = reference.cwiseAbs().maxCoeff();
  double err = 0.0;
  for (Eigen::Index i = 0; i < A.rows(); ++i) {
    for (Eigen::Index j = 0; j < A.cols(); ++j) {
      const double denom = std::abs(reference(i, j)) + floor * scale;
      if (denom == 0.0) continue;
      err = std::max(err, std::abs(A(i, j) - reference(i, j)) / denom);
    }
  }
  return err;
}

namespace {

template <typename Adj>
double mirror_error(const Eigen::Matrix<cplx, 12, 12>& M, Adj row_adj,
                    Adj col_adj) {
  const double scale = std::max(M.cwiseAbs().maxCoeff(), 1e-300);
  double err = 0.0;
  for (std::size_t i = 0; i < kDim; ++i) {
    for (std::size_t j = 0; j < kDim; ++j) {
      err = std::max(err,
                     std::abs(M(row_adj(i), col_adj(j)) - std::conj(M(i, j))));
    }
  }
  return err / scale;
}

}  // namespace

double conjugate_symmetry_error(const DriftMatrix& A) {
  return mirror_error(A, var_adjoint, var_adjoint);
}

double coupling_symmetry_error(const NoiseCoupling& B) {
  return mirror_error(B, var_adjoint, noise_adjoint);
}

double hermiticity_error(const NoiseMatrix& C) {
  const double scale = std::max(C.cwiseAbs().maxCoeff(), 1e-300);
  double err = 0.0;
  for (std::size_t x = 0; x < kDim; ++x) {
    for (std::size_t y = 0; y < kDim; ++y) {
      err = std::max(err, std::abs(C(x, y) - std::conj(C(noise_adjoint(y),
                                                         noise_adjoint(x)))));
    }
  }
  return err / scale;
}

cplx output_commutator(const SpectrumEvaluator& ev, double omega, int mode) {
  const OutputRows rows = ev.output_rows(omega, mode);
  const NoiseMatrix& C = ev.correlations().C;
  // a+_out(-w) as an operator row is rows.ad_neg
  return (rows.a_pos * C * rows.ad_neg.transpose())(0, 0) -
         (rows.ad_neg * C * rows.a_pos.transpose())(0, 0);
}

}  // namespace ceit::checks
