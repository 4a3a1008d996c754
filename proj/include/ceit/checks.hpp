#pragma once

#include "ceit/diffusion.hpp"
#include "ceit/fluctuations.hpp"
#include "ceit/spectra.hpp"

// Numerical hygiene probes shared by the test suites and the validate
// command. The finite-difference Jacobian goes through mean_drift only, so it
// is independent of the analytic drift_partials.
namespace ceit::checks {

// Central differences of the physical (per-atom) drift, rescaled to the
// collective doubled-space layout of LinearModel::A. Drives are held fixed.
DriftMatrix finite_difference_jacobian(const ModelParams& p, const MeanState& m,
                                       double rel_step = 1e-6);

// max_ij |A_ij - B_ij| / (|B_ij| + floor * max|B|). Entries far below the
// largest one (structural zeros included) are judged on the scale of max|B|,
// where central-difference roundoff lives.
double relative_matrix_error(const DriftMatrix& A, const DriftMatrix& reference,
                             double floor = 1e-4);

// max |A[adj i, adj j] - conj A[i, j]| / max|A|
double conjugate_symmetry_error(const DriftMatrix& A);
double coupling_symmetry_error(const NoiseCoupling& B);

// max |C[x, y] - conj C[adj y, adj x]| / max|C|
double hermiticity_error(const NoiseMatrix& C);

// <[a_out(w), a_out(w)^+]> for the selected mode; 1 for a consistent model.
cplx output_commutator(const SpectrumEvaluator& ev, double omega, int mode);

}  // namespace ceit::checks
