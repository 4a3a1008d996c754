#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace ceit {

using cplx = std::complex<double>;
inline constexpr cplx kI{0.0, 1.0};

// Physical parameters of the two-mode cavity with N Lambda atoms. Mode 1 is
// the pump (couples |1> <-> |0>), mode 2 the probe (|2> <-> |0>). All values
// are raw rates; the library never assumes a unit.
struct ModelParams {
  double Gamma1 = 1.0;   // radiative decay |0> -> |1>
  double Gamma2 = 1.0;   // radiative decay |0> -> |2>
  double Gamma12 = 0.0;  // ground-level dephasing
  double gamma1 = 0.06;  // cavity decay, pump mode
  double gamma2 = 0.06;  // cavity decay, probe mode
  double g1 = -0.005;
  double g2 = -0.005;
  double delta = 0.0;  // common detuning of both modes
  double N = 1e6;
  cplx alpha1{-200.0, 0.0};  // target intracavity mean amplitudes
  cplx alpha2{0.0, 0.0};
  double r = 0.0;    // probe input squeeze parameter
  double phi = 0.0;  // probe input squeeze phase
  // Drops the Gamma12/4 optical-coherence damping implied by the dephasing
  // jump operator, reproducing the printed drift equations exactly.
  bool literal_mode = false;

  // Largest of the dissipative rates; the scale used for relative tolerances.
  double rate_scale() const;
};

// Canonical orderings of the doubled (operator + adjoint) fluctuation space.
enum class Var : std::size_t {
  kA1 = 0, kA2, kS10, kS20, kS21, kW1, kW2,
  kA1d, kA2d, kS01, kS02, kS12,
};

enum class Noise : std::size_t {
  kA1in = 0, kA2in, kA1inD, kA2inD,
  kF10, kF20, kF21, kFW1, kFW2, kF01, kF02, kF12,
};

inline constexpr std::size_t kDim = 12;

constexpr std::size_t idx(Var v) { return static_cast<std::size_t>(v); }
constexpr std::size_t idx(Noise n) { return static_cast<std::size_t>(n); }

// Adjoint partner of a fluctuation variable / noise source. W1, W2 and their
// forces are self-adjoint.
std::size_t var_adjoint(std::size_t i);
std::size_t noise_adjoint(std::size_t i);

std::string_view var_name(std::size_t i);
std::string_view noise_name(std::size_t i);

// Noise source driving each variable row through the identity part of B
// (cavity rows are driven through sqrt(gamma) instead).
std::size_t noise_for_var(std::size_t i);

struct DerivedQuantities {
  double C = 0.0;        // cooperativity g^2 N / gamma
  double delta_c = 0.0;  // delta / C
  cplx Omega1;           // g1 * alpha1
  cplx Omega2;           // g2 * alpha2
};

struct ValidationWarning {
  std::string message;
};

// Returns the parameters unchanged when every hard constraint holds; soft
// small-noise assumptions are reported through `warnings` if supplied.
ModelParams validate_params(const ModelParams& p,
                            std::vector<ValidationWarning>* warnings = nullptr);

// Requires g1 == g2 and gamma1 == gamma2 (symmetric configuration).
DerivedQuantities derived_quantities(const ModelParams& p);

}  // namespace ceit
