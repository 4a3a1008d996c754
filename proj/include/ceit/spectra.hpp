#pragma once

#include <array>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "ceit/diffusion.hpp"
#include "ceit/fluctuations.hpp"

namespace ceit {

struct SpectrumRow {
  double omega = 0.0;
  int mode = 0;
  double theta = 0.0;
  std::optional<double> value;  // nullopt marks a NearSingular gap
};

struct SpectrumTable {
  std::vector<SpectrumRow> rows;
  std::size_t gaps() const;
};

// Output-field rows u = v_a e^{i theta} + v_a+ e^{-i theta} over the noise
// vector, at +omega and -omega.
struct OutputRows {
  Eigen::Matrix<cplx, 1, 12> a_pos, ad_pos, a_neg, ad_neg;
};

// Frequency-domain evaluator of stationary output quadrature spectra.
//
// The output rows of (-i w - A)^{-1} only involve the variables reachable
// from the output field through nonzero entries of A, and that set spans an
// invariant subspace. Each mode is therefore solved on its own observed
// block; modes decoupled from the output (for example the ground-population
// redistribution mode of uncoupled atoms) cannot make the solve singular.
//
// Fourier convention x(w) = (2 pi)^{-1/2} int dt e^{i w t} x(t). The spectrum
// is the operator-ordered contraction S = u(w) C u(-w)^T with vacuum = 1.
class SpectrumEvaluator {
 public:
  // Runs stability_check; throws Unstable.
  SpectrumEvaluator(const LinearModel& lm, const CorrelationMatrix& corr);

  // Throws NearSingular when -i w hits an eigenvalue of the observed block.
  double value(double omega, int mode, double theta) const;
  cplx complex_value(double omega, int mode, double theta) const;

  OutputRows output_rows(double omega, int mode) const;
  cplx contract(const OutputRows& rows, double theta) const;

  bool near_singular(double omega, int mode) const;
  const std::vector<std::size_t>& observed(int mode) const;
  const StabilityReport& stability() const { return stability_; }
  const LinearModel& model() const { return lm_; }
  const CorrelationMatrix& correlations() const { return corr_; }

 private:
  struct Block {
    std::vector<std::size_t> vars;
    Eigen::MatrixXcd A;      // observed block of A
    Eigen::MatrixXcd B;      // matching rows of B
    std::vector<cplx> eigenvalues;
    double scale = 1.0;
    Eigen::Index out_a = 0, out_ad = 0;  // positions of a, a+ in vars
  };

  const Block& block(int mode) const;
  Eigen::Matrix<cplx, 2, 12> resolvent_rows(const Block& b, double omega) const;

  LinearModel lm_;
  CorrelationMatrix corr_;
  StabilityReport stability_;
  std::array<Block, 2> blocks_;
};

// Full pipeline: validate, steady state, linearization, Einstein diffusion,
// input correlations.
SpectrumEvaluator build_evaluator(const ModelParams& p,
                                  const NewtonOptions& newton = {});

double quadrature_spectrum(const LinearModel& lm, const CorrelationMatrix& corr,
                           double omega, int mode, double theta);

// Rows ordered by grid index, then mode, then theta.
SpectrumTable spectrum_sweep(const SpectrumEvaluator& ev,
                             std::span<const double> omega_grid,
                             std::span<const int> modes,
                             std::span<const double> thetas);

struct PeakReport {
  double omega_peak = 0.0;
  double height = 0.0;
  double second_derivative = 0.0;
  std::array<double, 2> bracket{};
  int iterations = 0;
};

struct PeakOptions {
  int grid_points = 2000;
  bool minima = false;            // locate minima instead of maxima
  double position_tolerance = 1e-4;  // relative; refinement goes well below it
};

// Grid scan (linear plus geometric points when the window reaches near 0)
// followed by golden-section refinement of every interior extremum.
// Throws NoPeak when the window holds none.
std::vector<PeakReport> find_peaks(const std::function<double(double)>& f,
                                   std::array<double, 2> window,
                                   const PeakOptions& opts = {});

std::vector<PeakReport> find_peaks(const SpectrumEvaluator& ev, int mode,
                                   double theta, std::array<double, 2> window,
                                   const PeakOptions& opts = {});

std::vector<double> scan_grid(std::array<double, 2> window, int points);

}  // namespace ceit
