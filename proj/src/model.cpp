#include "ceit/model.hpp"

#include <algorithm>
#include <cmath>

#include "ceit/error.hpp"

namespace ceit {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNegativeRate: return "NegativeRate";
    case ErrorCode::kZeroAtoms: return "ZeroAtoms";
    case ErrorCode::kAsymmetricCoupling: return "AsymmetricCoupling";
    case ErrorCode::kZeroDrive: return "ZeroDrive";
    case ErrorCode::kNoConvergence: return "NoConvergence";
    case ErrorCode::kSingularJacobian: return "SingularJacobian";
    case ErrorCode::kUnstable: return "Unstable";
    case ErrorCode::kNearSingular: return "NearSingular";
    case ErrorCode::kNoPeak: return "NoPeak";
    case ErrorCode::kDomainError: return "DomainError";
    case ErrorCode::kConfigError: return "ConfigError";
  }
  return "Unknown";
}

double ModelParams::rate_scale() const {
  return std::max({Gamma1, Gamma2, Gamma12, gamma1, gamma2, 1e-300});
}

namespace {

constexpr std::array<std::string_view, kDim> kVarNames = {
    "a1", "a2", "S10", "S20", "S21", "W1", "W2",
    "a1+", "a2+", "S01", "S02", "S12"};

constexpr std::array<std::string_view, kDim> kNoiseNames = {
    "a1in", "a2in", "a1in+", "a2in+", "F10", "F20",
    "F21", "FW1", "FW2", "F01", "F02", "F12"};

constexpr std::array<std::size_t, kDim> kVarAdjoint = {7, 8, 9, 10, 11, 5,
                                                       6, 0, 1, 2,  3,  4};
constexpr std::array<std::size_t, kDim> kNoiseAdjoint = {2, 3, 0,  1, 9, 10,
                                                         11, 7, 8, 4, 5, 6};
constexpr std::array<std::size_t, kDim> kNoiseForVar = {0, 1, 4, 5,  6,  7,
                                                        8, 2, 3, 9, 10, 11};

}  // namespace

std::size_t var_adjoint(std::size_t i) { return kVarAdjoint.at(i); }
std::size_t noise_adjoint(std::size_t i) { return kNoiseAdjoint.at(i); }
std::string_view var_name(std::size_t i) { return kVarNames.at(i); }
std::string_view noise_name(std::size_t i) { return kNoiseNames.at(i); }
std::size_t noise_for_var(std::size_t i) { return kNoiseForVar.at(i); }

ModelParams validate_params(const ModelParams& p,
                            std::vector<ValidationWarning>* warnings) {
  const std::array<std::pair<const char*, double>, 5> rates = {{
      {"Gamma1", p.Gamma1},
      {"Gamma2", p.Gamma2},
      {"Gamma12", p.Gamma12},
      {"gamma1", p.gamma1},
      {"gamma2", p.gamma2},
  }};
  for (const auto& [name, value] : rates) {
    if (!(value >= 0.0) || !std::isfinite(value)) {
      throw Error(ErrorCode::kNegativeRate,
                  std::string(name) + " must be a finite non-negative rate");
    }
  }
  if (!(p.N >= 1.0) || !std::isfinite(p.N)) {
    throw Error(ErrorCode::kZeroAtoms, "N must be at least 1");
  }
  if (!(p.r >= 0.0)) {
    throw Error(ErrorCode::kNegativeRate, "squeeze parameter r must be >= 0");
  }
  if (warnings != nullptr) {
    auto warn = [&](std::string msg) { warnings->push_back({std::move(msg)}); };
    if (p.Gamma1 != p.Gamma2) warn("Gamma1 != Gamma2: closed forms assume equal decay");
    if (p.gamma1 != p.gamma2) warn("gamma1 != gamma2: closed forms assume equal cavity decay");
    for (const cplx a : {p.alpha1, p.alpha2}) {
      if (a != 0.0 && std::abs(a) < 10.0) {
        warn("|alpha| is not >> 1; small-noise approximation is doubtful");
        break;
      }
    }
  }
  return p;
}

DerivedQuantities derived_quantities(const ModelParams& p) {
  if (p.g1 != p.g2 || p.gamma1 != p.gamma2) {
    throw Error(ErrorCode::kAsymmetricCoupling,
                "cooperativity needs g1 == g2 and gamma1 == gamma2");
  }
  DerivedQuantities d;
  d.C = p.g1 * p.g1 * p.N / p.gamma1;
  d.delta_c = (p.delta == 0.0) ? 0.0 : p.delta / d.C;
  d.Omega1 = p.g1 * p.alpha1;
  d.Omega2 = p.g2 * p.alpha2;
  return d;
}

}  // namespace ceit
