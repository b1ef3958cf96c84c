#pragma once

// AMP/CAMP reconstruction on synthetic instances, with the Onsager
// correction, self-estimated or scheduled equivalent-noise variance, and a
// Monte Carlo harness that pairs empirical MSE with state-evolution
// predictions per grid point.

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <vector>

#include "qsnr/linalg.hpp"
#include "qsnr/priors.hpp"
#include "qsnr/state_evolution.hpp"

namespace qsnr::amp {

using priors::Domain;
using priors::Prior;
using state_evolution::NoiseModel;

enum class SigmaEstimator {
  ResidualNorm,   // (sigma_e^t)^2 := ||r^t||^2 / m, self-contained
  TheoreticalSE,  // (sigma_e^t)^2 from a precomputed SE schedule
};

struct AMPConfig {
  std::size_t max_iter = 2000;
  double rel_tol = 1e-8;  // stop when ||x^{t+1}-x^t|| / ||x^{t+1}|| <= rel_tol
  SigmaEstimator sigma_e_estimator = SigmaEstimator::ResidualNorm;
  // Threshold multiplier for soft-threshold (least-favorable) reconstruction;
  // NaN means Auto: the precomputed worst-case alpha-dagger(epsilon).
  double threshold_alpha = std::numeric_limits<double>::quiet_NaN();
  bool onsager_enabled = true;  // disabled only by the regression experiment
  bool parallel = true;         // OpenMP matvecs (bitwise equal to serial)
};

inline bool alpha_is_auto(double a) { return std::isnan(a); }

// One synthetic measurement instance, y = A x_true + w exactly.
template <class Scalar>
struct Instance {
  linalg::Matrix<Scalar> A;      // m x n, entries i.i.d. variance 1/m
  linalg::Matrix<Scalar> A_adj;  // cached conjugate transpose (n x m)
  std::vector<Scalar> x_true;
  std::vector<Scalar> y;
  std::vector<Scalar> w;
  double delta = 1.0;  // requested ratio; realized ratio is m()/n()
  NoiseModel noise;
  std::uint64_t seed = 0;

  std::size_t m() const { return A.rows; }
  std::size_t n() const { return A.cols; }
};

// Assembles an instance deterministically from the seed: the signal, matrix,
// and noise come from the fixed substreams (kTagSignal/kTagMatrix/kTagNoise),
// m = round(delta*n) floored at 1, and sigma_w^2 follows the noise rule
// evaluated at the requested delta.
template <class Scalar>
Instance<Scalar> make_instance(const Prior& prior, std::size_t n, double delta,
                               const NoiseModel& noise, std::uint64_t seed);

template <class Scalar>
struct AMPResult {
  std::vector<Scalar> x_hat;
  std::size_t iters_used = 0;  // number of updates performed
  bool converged = false;      // stopped via rel_tol (not the iteration cap)
  // mse_trace[t] = ||x^t - x_true||^2 / n, starting at t = 0 (so entry 0 is
  // the energy of x_true and entry t aligns with the SE trace's Err_t).
  std::vector<double> mse_trace;
  // sigma_e2_trace[t] = the (sigma_e^t)^2 value used by update t.
  std::vector<double> sigma_e2_trace;
};

// Runs x^{t+1} = eta(A* r^t + x^t); r^{t+1} = y - A x^{t+1} + (1/delta)<eta'> r^t
// from x^0 = 0, r^0 = y. The denoiser follows the prior: posterior mean for
// Gaussian/Bernoulli-Gaussian, soft threshold with lambda^t = alpha *
// sigma_e^t for the least-favorable prior (alpha from cfg.threshold_alpha, or
// the worst-case alpha-dagger(epsilon) when Auto). The 1/delta factor uses
// the realized ratio m/n; <eta'> is the entry mean of eta' (complex: of
// (dRR+dII)/2). With sigma_e_estimator == TheoreticalSE, se_schedule supplies
// (sigma_e^t)^2 per iteration (falling back to ResidualNorm past its end).
// Throws NumericalBlowupError when the iterate norm exceeds 1e6 times the
// signal scale sqrt(n E[X^2]) or turns non-finite.
template <class Scalar>
AMPResult<Scalar> amp_run(const Instance<Scalar>& inst, const Prior& prior,
                          const AMPConfig& cfg,
                          const std::vector<double>* se_schedule = nullptr);

// (sigma_e)^2 estimate from a residual vector: ResidualNorm gives
// ||r||^2 / m; TheoreticalSE returns *theoretical when provided (the value
// obtained from the parallel SE recursion) and falls back to ResidualNorm.
double estimate_sigma_e(const std::vector<double>& r, SigmaEstimator mode,
                        const double* theoretical = nullptr);
double estimate_sigma_e(const std::vector<std::complex<double>>& r, SigmaEstimator mode,
                        const double* theoretical = nullptr);

struct TrialRecord {
  double delta = 0.0;  // requested grid value
  std::size_t n = 0;
  std::uint64_t seed = 0;
  std::size_t iters_used = 0;
  double empirical_mse = 0.0;
  double se_predicted_mse = 0.0;  // fixed-point Err of the SE run (inf if divergent)
};

struct MonteCarloOptions {
  std::size_t trials = 100;
  std::uint64_t base_seed = 1;
  AMPConfig cfg{};
  // Least-favorable priors are simulated through a Bernoulli-Gaussian
  // surrogate of this variance (the mu -> inf worst case has no sampleable
  // law); set lf_sample_three_point to draw from the three-point law at the
  // prior's finite mu instead.
  double lf_surrogate_sigma_x2 = 100.0;
  bool lf_sample_three_point = false;
};

// Aggregate for one grid point.
struct DeltaSummary {
  double delta = 0.0;
  double err_se = 0.0;       // SE fixed-point Err (inf when SE diverges)
  bool se_converged = false;
  double err_empirical = 0.0;  // mean empirical MSE over non-blown-up trials
  double stderr_mean = 0.0;    // sample standard error of that mean
  std::size_t fail_count = 0;  // trials that ended in NumericalBlowup
  std::size_t capped = 0;      // trials that hit max_iter without converging
  std::vector<TrialRecord> records;
};

// Runs trials x grid: trial i uses seed base_seed + i (the same instance
// stream at every delta, so grid points share their random draws). For a
// least-favorable prior, sampling uses the surrogate and reconstruction the
// soft threshold; the SE reference stays the worst-case recursion.
// Deterministic in base_seed for any thread count.
template <class Scalar>
std::vector<DeltaSummary> monte_carlo(const Prior& prior, std::size_t n,
                                      const std::vector<double>& delta_grid,
                                      const NoiseModel& noise,
                                      const MonteCarloOptions& opt);

// Spec-shaped convenience overload.
template <class Scalar>
std::vector<DeltaSummary> monte_carlo(const Prior& prior, std::size_t n,
                                      const std::vector<double>& delta_grid,
                                      const NoiseModel& noise, std::size_t trials,
                                      std::uint64_t base_seed, const AMPConfig& cfg) {
  MonteCarloOptions opt;
  opt.trials = trials;
  opt.base_seed = base_seed;
  opt.cfg = cfg;
  return monte_carlo<Scalar>(prior, n, delta_grid, noise, opt);
}

extern template Instance<double> make_instance<double>(const Prior&, std::size_t, double,
                                                       const NoiseModel&, std::uint64_t);
extern template Instance<std::complex<double>> make_instance<std::complex<double>>(
    const Prior&, std::size_t, double, const NoiseModel&, std::uint64_t);
extern template AMPResult<double> amp_run<double>(const Instance<double>&, const Prior&,
                                                  const AMPConfig&, const std::vector<double>*);
extern template AMPResult<std::complex<double>> amp_run<std::complex<double>>(
    const Instance<std::complex<double>>&, const Prior&, const AMPConfig&,
    const std::vector<double>*);
extern template std::vector<DeltaSummary> monte_carlo<double>(const Prior&, std::size_t,
                                                              const std::vector<double>&,
                                                              const NoiseModel&,
                                                              const MonteCarloOptions&);
extern template std::vector<DeltaSummary> monte_carlo<std::complex<double>>(
    const Prior&, std::size_t, const std::vector<double>&, const NoiseModel&,
    const MonteCarloOptions&);

}  // namespace qsnr::amp
