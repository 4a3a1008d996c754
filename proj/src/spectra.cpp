#include "ceit/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include "ceit/error.hpp"

namespace ceit {

std::size_t SpectrumTable::gaps() const {
  return static_cast<std::size_t>(std::count_if(
      rows.begin(), rows.end(), [](const auto& r) { return !r.value; }));
}

namespace {

std::vector<std::size_t> reachable_from(const DriftMatrix& A,
                                        std::initializer_list<std::size_t> seeds) {
  std::array<bool, kDim> seen{};
  std::vector<std::size_t> stack(seeds);
  for (std::size_t s : seeds) seen[s] = true;
  while (!stack.empty()) {
    const std::size_t i = stack.back();
    stack.pop_back();
    for (std::size_t j = 0; j < kDim; ++j) {
      if (!seen[j] && A(i, j) != 0.0) {
        seen[j] = true;
        stack.push_back(j);
      }
    }
  }
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < kDim; ++j) {
    if (seen[j]) out.push_back(j);
  }
  return out;
}

void check_mode(int mode) {
  if (mode != 1 && mode != 2) {
    throw Error(ErrorCode::kDomainError, "mode must be 1 or 2");
  }
}

}  // namespace

SpectrumEvaluator::SpectrumEvaluator(const LinearModel& lm,
                                     const CorrelationMatrix& corr)
    : lm_(lm), corr_(corr), stability_(stability_check(lm)) {
  for (int mode = 1; mode <= 2; ++mode) {
    const std::size_t a = mode == 1 ? idx(Var::kA1) : idx(Var::kA2);
    const std::size_t ad = var_adjoint(a);
    Block& b = blocks_[mode - 1];
    b.vars = reachable_from(lm.A, {a, ad});
    const auto n = static_cast<Eigen::Index>(b.vars.size());
    b.A.resize(n, n);
    b.B.resize(n, 12);
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = 0; j < n; ++j) b.A(i, j) = lm.A(b.vars[i], b.vars[j]);
      b.B.row(i) = lm.B.row(b.vars[i]);
      if (b.vars[i] == a) b.out_a = i;
      if (b.vars[i] == ad) b.out_ad = i;
    }
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(b.A, false);
    for (Eigen::Index k = 0; k < n; ++k) b.eigenvalues.push_back(es.eigenvalues()(k));
    b.scale = std::max(1.0, b.A.cwiseAbs().maxCoeff());
  }
}

const SpectrumEvaluator::Block& SpectrumEvaluator::block(int mode) const {
  check_mode(mode);
  return blocks_[mode - 1];
}

const std::vector<std::size_t>& SpectrumEvaluator::observed(int mode) const {
  return block(mode).vars;
}

bool SpectrumEvaluator::near_singular(double omega, int mode) const {
  const Block& b = block(mode);
  const double tol = 10.0 * std::numeric_limits<double>::epsilon() * b.scale;
  for (double w : {omega, -omega}) {
    for (const cplx lambda : b.eigenvalues) {
      if (std::abs(-kI * w - lambda) < tol) return true;
    }
  }
  return false;
}

Eigen::Matrix<cplx, 2, 12> SpectrumEvaluator::resolvent_rows(
    const Block& b, double omega) const {
  const Eigen::Index n = b.A.rows();
  Eigen::MatrixXcd M = -b.A;
  M.diagonal().array() -= kI * omega;
  // rows e^T M^{-1} come from solving M^T x = e
  Eigen::MatrixXcd rhs = Eigen::MatrixXcd::Zero(n, 2);
  rhs(b.out_a, 0) = 1.0;
  rhs(b.out_ad, 1) = 1.0;
  const Eigen::MatrixXcd x = M.transpose().partialPivLu().solve(rhs);
  return x.transpose() * b.B;
}

OutputRows SpectrumEvaluator::output_rows(double omega, int mode) const {
  const Block& b = block(mode);
  if (near_singular(omega, mode)) {
    throw Error(ErrorCode::kNearSingular,
                "frequency coincides with an eigenvalue of the observed drift");
  }
  const double sg = std::sqrt(mode == 1 ? lm_.params.gamma1 : lm_.params.gamma2);
  const std::size_t in = mode == 1 ? idx(Noise::kA1in) : idx(Noise::kA2in);
  const std::size_t ind = noise_adjoint(in);

  OutputRows rows;
  const auto pos = resolvent_rows(b, omega);
  const auto neg = resolvent_rows(b, -omega);
  // a_out = sqrt(gamma) a - a_in
  rows.a_pos = sg * pos.row(0);
  rows.ad_pos = sg * pos.row(1);
  rows.a_neg = sg * neg.row(0);
  rows.ad_neg = sg * neg.row(1);
  rows.a_pos(in) -= 1.0;
  rows.a_neg(in) -= 1.0;
  rows.ad_pos(ind) -= 1.0;
  rows.ad_neg(ind) -= 1.0;
  return rows;
}

cplx SpectrumEvaluator::contract(const OutputRows& rows, double theta) const {
  const cplx e = std::exp(kI * theta);
  const cplx ec = std::conj(e);
  const Eigen::Matrix<cplx, 1, 12> u_pos = e * rows.a_pos + ec * rows.ad_pos;
  const Eigen::Matrix<cplx, 1, 12> u_neg = e * rows.a_neg + ec * rows.ad_neg;
  return (u_pos * corr_.C * u_neg.transpose())(0, 0);
}

cplx SpectrumEvaluator::complex_value(double omega, int mode,
                                      double theta) const {
  return contract(output_rows(omega, mode), theta);
}

double SpectrumEvaluator::value(double omega, int mode, double theta) const {
  return complex_value(omega, mode, theta).real();
}

SpectrumEvaluator build_evaluator(const ModelParams& p,
                                  const NewtonOptions& newton) {
  const ModelParams valid = validate_params(p);
  const SteadyState ss = solve_steady_state(valid, newton);
  const LinearModel lm = drift_jacobian(valid, ss);
  return SpectrumEvaluator(lm, input_correlations(valid, diffusion_matrix(valid, ss)));
}

double quadrature_spectrum(const LinearModel& lm, const CorrelationMatrix& corr,
                           double omega, int mode, double theta) {
  return SpectrumEvaluator(lm, corr).value(omega, mode, theta);
}

SpectrumTable spectrum_sweep(const SpectrumEvaluator& ev,
                             std::span<const double> omega_grid,
                             std::span<const int> modes,
                             std::span<const double> thetas) {
  SpectrumTable table;
  table.rows.reserve(omega_grid.size() * modes.size() * thetas.size());
  for (double w : omega_grid) {
    for (int mode : modes) {
      std::optional<OutputRows> rows;
      if (!ev.near_singular(w, mode)) rows = ev.output_rows(w, mode);
      for (double th : thetas) {
        SpectrumRow row{w, mode, th, std::nullopt};
        if (rows) row.value = ev.contract(*rows, th).real();
        table.rows.push_back(row);
      }
    }
  }
  return table;
}

std::vector<double> scan_grid(std::array<double, 2> window, int points) {
  const auto [lo, hi] = window;
  if (!(hi > lo) || points < 3) {
    throw Error(ErrorCode::kDomainError, "peak window must satisfy lo < hi");
  }
  std::vector<double> grid;
  const bool near_zero = lo <= 0.0 || hi / lo > 100.0;
  const int linear = near_zero ? points / 2 : points;
  for (int k = 0; k < linear; ++k) {
    grid.push_back(lo + (hi - lo) * k / (linear - 1));
  }
  if (near_zero) {
    const int geometric = points - linear;
    const double start = std::max(lo, 1e-6 * hi);
    const double ratio = std::log(hi / start);
    for (int k = 0; k < geometric; ++k) {
      grid.push_back(start * std::exp(ratio * k / (geometric - 1)));
    }
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  grid.erase(std::remove_if(grid.begin(), grid.end(),
                            [&](double w) { return w < lo || w > hi; }),
             grid.end());
  return grid;
}

namespace {

struct Sample {
  double omega;
  double value;
};

// Golden-section maximization of g on [lo, hi].
PeakReport refine(const std::function<double(double)>& g, double lo,
                  double hi) {
  constexpr double kInvPhi = 0.6180339887498949;
  PeakReport rep;
  rep.bracket = {lo, hi};
  double a = lo, b = hi;
  double c = b - kInvPhi * (b - a), d = a + kInvPhi * (b - a);
  double gc = g(c), gd = g(d);
  const double width0 = hi - lo;
  int it = 0;
  while (b - a > 1e-10 * std::max(std::abs(0.5 * (a + b)), width0) &&
         it < 300) {
    if (gc >= gd) {
      b = d;
      d = c;
      gd = gc;
      c = b - kInvPhi * (b - a);
      gc = g(c);
    } else {
      a = c;
      c = d;
      gc = gd;
      d = a + kInvPhi * (b - a);
      gd = g(d);
    }
    ++it;
  }
  rep.omega_peak = 0.5 * (a + b);
  rep.height = g(rep.omega_peak);
  const double h = 1e-3 * width0;
  rep.second_derivative =
      (g(rep.omega_peak + h) - 2.0 * rep.height + g(rep.omega_peak - h)) /
      (h * h);
  rep.iterations = it;
  return rep;
}

}  // namespace

std::vector<PeakReport> find_peaks(const std::function<double(double)>& f,
                                   std::array<double, 2> window,
                                   const PeakOptions& opts) {
  const double sign = opts.minima ? -1.0 : 1.0;
  auto g = [&](double w) { return sign * f(w); };

  std::vector<Sample> samples;
  for (double w : scan_grid(window, opts.grid_points)) {
    try {
      samples.push_back({w, g(w)});
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kNearSingular) throw;
    }
  }
  double vmax = 0.0;
  for (const auto& s : samples) vmax = std::max(vmax, std::abs(s.value));
  const double flat = 1e-9 * vmax;

  std::vector<PeakReport> peaks;
  int last_sign = 0;
  std::size_t rise_start = 0;
  for (std::size_t k = 0; k + 1 < samples.size(); ++k) {
    const double diff = samples[k + 1].value - samples[k].value;
    const int s = diff > flat ? 1 : (diff < -flat ? -1 : 0);
    if (s == 0) continue;
    if (s < 0 && last_sign > 0) {
      PeakReport rep = refine(g, samples[rise_start].omega, samples[k + 1].omega);
      rep.height *= sign;
      rep.second_derivative *= sign;
      peaks.push_back(rep);
    }
    if (s > 0) rise_start = k;
    last_sign = s;
  }
  if (peaks.empty()) {
    throw Error(ErrorCode::kNoPeak, "no interior extremum in the window");
  }
  return peaks;
}

std::vector<PeakReport> find_peaks(const SpectrumEvaluator& ev, int mode,
                                   double theta, std::array<double, 2> window,
                                   const PeakOptions& opts) {
  return find_peaks([&](double w) { return ev.value(w, mode, theta); }, window,
                    opts);
}

}  // namespace ceit
