#pragma once

#include <vector>

#include <Eigen/Core>

#include "ceit/model.hpp"
#include "ceit/semiclassics.hpp"

namespace ceit {

using Matrix9c = Eigen::Matrix<cplx, 9, 9>;
using AtomicDiffusion = Eigen::Matrix<cplx, 8, 8>;
using NoiseMatrix = Eigen::Matrix<cplx, 12, 12>;

// Single-atom Heisenberg generator dX/dt = i[H, X] + sum_k (J+ X J - {J+J, X}/2).
// Jumps: sqrt(Gamma1)|1><0|, sqrt(Gamma2)|2><0|, sqrt(Gamma12/2)(|1><1|-|2><2|).
// H is the mean-field Hamiltonian at fixed intracavity amplitudes.
struct AtomGenerator {
  std::vector<Eigen::Matrix3cd> jumps;
  Eigen::Matrix3cd hamiltonian;

  Eigen::Matrix3cd apply(const Eigen::Matrix3cd& X,
                         bool include_hamiltonian = true) const;

  // Matrix of the generator on the basis sigma_ij (flat index 3 i + j):
  // L(sigma_a) = sum_b S(b, a) sigma_b.
  Matrix9c superoperator(bool include_hamiltonian = true) const;
};

AtomGenerator make_atom_generator(const ModelParams& p, const MeanState& m);

// Linear combination of sigma_ij (flat index 3 i + j) that each atomic noise
// source F10, F20, F21, FW1, FW2, F01, F02, F12 is attached to.
Eigen::Matrix<cplx, 9, 1> force_operator(std::size_t atomic_force);

// Collective Langevin diffusion of the atomic forces, in noise order
// restricted to F10..F12 (rows/cols 0..7), from the generalized Einstein
// relation D_xy = <L(xy)> - <L(x) y> - <x L(y)>.
AtomicDiffusion diffusion_matrix(const ModelParams& p, const SteadyState& ss,
                                 bool include_hamiltonian = false);

struct CorrelationMatrix {
  NoiseMatrix C;  // <xi_x(t) xi_y(t')> = C(x, y) delta(t - t')
};

// Pump input is vacuum; probe input is squeezed vacuum with
// n = sinh^2 r, m = -exp(2 i phi) sinh r cosh r.
CorrelationMatrix input_correlations(const ModelParams& p,
                                     const AtomicDiffusion& D);

// Quadrature noise of the input field of `mode` (vacuum = 1).
double input_quadrature_noise(const ModelParams& p, int mode, double theta);

}  // namespace ceit
