#include "ceit/diffusion.hpp"

#include <cmath>

namespace ceit {

namespace {

Eigen::Matrix3cd unit(int i, int j) {
  Eigen::Matrix3cd e = Eigen::Matrix3cd::Zero();
  e(i, j) = 1.0;
  return e;
}

}  // namespace

AtomGenerator make_atom_generator(const ModelParams& p, const MeanState& m) {
  AtomGenerator gen;
  gen.jumps.push_back(std::sqrt(p.Gamma1) * unit(1, 0));
  gen.jumps.push_back(std::sqrt(p.Gamma2) * unit(2, 0));
  gen.jumps.push_back(std::sqrt(0.5 * p.Gamma12) * (unit(1, 1) - unit(2, 2)));
  gen.hamiltonian = -p.delta * unit(0, 0) +
                    p.g1 * (std::conj(m.a1) * unit(1, 0) + m.a1 * unit(0, 1)) +
                    p.g2 * (std::conj(m.a2) * unit(2, 0) + m.a2 * unit(0, 2));
  return gen;
}

Eigen::Matrix3cd AtomGenerator::apply(const Eigen::Matrix3cd& X,
                                      bool include_hamiltonian) const {
  Eigen::Matrix3cd out = Eigen::Matrix3cd::Zero();
  for (const auto& J : jumps) {
    const Eigen::Matrix3cd Jd = J.adjoint();
    const Eigen::Matrix3cd JdJ = Jd * J;
    out += Jd * X * J - 0.5 * (JdJ * X + X * JdJ);
  }
  if (include_hamiltonian) {
    out += kI * (hamiltonian * X - X * hamiltonian);
  }
  return out;
}

Matrix9c AtomGenerator::superoperator(bool include_hamiltonian) const {
  Matrix9c S;
  for (int a = 0; a < 9; ++a) {
    const Eigen::Matrix3cd image = apply(unit(a / 3, a % 3), include_hamiltonian);
    for (int b = 0; b < 9; ++b) S(b, a) = image(b / 3, b % 3);
  }
  return S;
}

Eigen::Matrix<cplx, 9, 1> force_operator(std::size_t atomic_force) {
  Eigen::Matrix<cplx, 9, 1> c = Eigen::Matrix<cplx, 9, 1>::Zero();
  auto at = [](int i, int j) { return 3 * i + j; };
  switch (atomic_force) {
    case 0: c(at(1, 0)) = 1.0; break;  // F10
    case 1: c(at(2, 0)) = 1.0; break;  // F20
    case 2: c(at(2, 1)) = 1.0; break;  // F21
    case 3: c(at(0, 0)) = 1.0; c(at(1, 1)) = -1.0; break;  // FW1
    case 4: c(at(0, 0)) = 1.0; c(at(2, 2)) = -1.0; break;  // FW2
    case 5: c(at(0, 1)) = 1.0; break;  // F01
    case 6: c(at(0, 2)) = 1.0; break;  // F02
    case 7: c(at(1, 2)) = 1.0; break;  // F12
    default: break;
  }
  return c;
}

AtomicDiffusion diffusion_matrix(const ModelParams& p, const SteadyState& ss,
                                 bool include_hamiltonian) {
  const AtomGenerator gen = make_atom_generator(p, ss.mean);
  const Matrix9c S = gen.superoperator(include_hamiltonian);
  const Eigen::Matrix3cd rho = ss.mean.density_matrix();

  // <sigma_ij> = rho(j, i)
  auto mean = [&](int b) { return rho(b % 3, b / 3); };
  // <sigma_ij sigma_kl> = delta_jk <sigma_il>
  auto mean_product = [&](int a, int c) -> cplx {
    if (a % 3 != c / 3) return 0.0;
    return mean(3 * (a / 3) + c % 3);
  };

  Matrix9c single;
  for (int a = 0; a < 9; ++a) {
    for (int c = 0; c < 9; ++c) {
      cplx d = 0.0;
      if (a % 3 == c / 3) {
        const int prod = 3 * (a / 3) + c % 3;
        for (int b = 0; b < 9; ++b) d += S(b, prod) * mean(b);
      }
      for (int b = 0; b < 9; ++b) {
        d -= S(b, a) * mean_product(b, c);
        d -= S(b, c) * mean_product(a, b);
      }
      single(a, c) = d;
    }
  }

  AtomicDiffusion D;
  for (std::size_t x = 0; x < 8; ++x) {
    const auto cx = force_operator(x);
    for (std::size_t y = 0; y < 8; ++y) {
      const auto cy = force_operator(y);
      D(x, y) = p.N * (cx.transpose() * single * cy)(0, 0);
    }
  }
  return D;
}

CorrelationMatrix input_correlations(const ModelParams& p,
                                     const AtomicDiffusion& D) {
  const double sh = std::sinh(p.r), ch = std::cosh(p.r);
  const double n = sh * sh;
  const cplx m = -std::exp(2.0 * kI * p.phi) * sh * ch;

  CorrelationMatrix out;
  out.C = NoiseMatrix::Zero();
  const std::size_t a1 = idx(Noise::kA1in), a1d = idx(Noise::kA1inD);
  const std::size_t a2 = idx(Noise::kA2in), a2d = idx(Noise::kA2inD);
  out.C(a1, a1d) = 1.0;
  out.C(a2, a2d) = n + 1.0;
  out.C(a2d, a2) = n;
  out.C(a2, a2) = m;
  out.C(a2d, a2d) = std::conj(m);
  out.C.bottomRightCorner<8, 8>() = D;
  return out;
}

double input_quadrature_noise(const ModelParams& p, int mode, double theta) {
  if (mode == 1) return 1.0;
  // 1 + 2n + 2 Re(m e^{2i theta}) = cosh 2r - sinh 2r cos 2(theta + phi)
  return std::cosh(2.0 * p.r) -
         std::sinh(2.0 * p.r) * std::cos(2.0 * (theta + p.phi));
}

}  // namespace ceit
