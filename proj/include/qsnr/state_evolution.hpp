#pragma once

// The scalar state-evolution recursion under the quadratically decreasing SNR
// model, its convergence/divergence bookkeeping, and the closed-form Gaussian
// baseline.

#include <optional>
#include <vector>

#include "qsnr/priors.hpp"

namespace qsnr::state_evolution {

using priors::Domain;
using priors::Prior;

enum class NoiseRule {
  QuadraticSNR,  // sigma_w^2 = delta * sigma0^2 (per-measurement SNR ~ 1/m^2)
  Constant,      // sigma_w^2 = sigma0^2
};

struct NoiseModel {
  double sigma0_2 = 0.0;  // noise base level
  NoiseRule rule = NoiseRule::QuadraticSNR;

  double sigma_w2(double delta) const {
    return rule == NoiseRule::QuadraticSNR ? delta * sigma0_2 : sigma0_2;
  }
};

struct SEState {
  int t = 0;
  double sigma_e2 = 0.0;  // equivalent-noise variance after iteration t
  double err = 0.0;       // Err_t; for t = 0 this is E[X^2], the MSE of x = 0
};

struct SETrace {
  double delta = 0.0;
  std::vector<SEState> states;  // states[0] holds the initial condition
  bool converged = false;       // tolerance reached AND sigma_e2 never increased
  std::optional<SEState> fixed_point;  // set whenever the tolerance was reached
};

struct SEOptions {
  int max_iter = 10000;
  double tol = 1e-12;        // relative change of sigma_e2 that counts as converged
  bool lf_finite_mu = false; // LF risk at the prior's finite mu instead of mu -> inf
};

// Iterate Err_{t+1} = err(sigma_e2_t); (sigma_e2)_{t+1} = Err_{t+1}/delta + sigma_w2
// from (sigma_e2)_0 = E[X^2]/delta + sigma_w2. err is the worst-case
// soft-threshold risk for the LF prior (at alpha-dagger(epsilon)) and the
// Bernoulli-Gaussian MMSE otherwise (Gaussian = BG at epsilon 1).
//
// Divergence: for the mu->inf LF recursion (linear with ratio M/delta) it is
// declared exactly when M/delta >= 1; any other run is stopped defensively if
// sigma_e2 exceeds 1e6x its initial value or increases 50 times in a row.
// Throws SeDivergedError in both cases.
SETrace se_run(const Prior& prior, double delta, const NoiseModel& noise,
               const SEOptions& opt);
SETrace se_run(const Prior& prior, double delta, const NoiseModel& noise,
               int max_iter = 10000, double tol = 1e-12);

// Closed-form fixed point for the Gaussian prior:
//   sigma_e_inf2 = [(c sx2 + d s02) + sqrt((c sx2 + d s02)^2 + 4 sx2 d s02)]/2,
//   c = (1-delta)/delta, and Err_inf = delta (sigma_e_inf2 - delta sigma0_2)
// (the last step uses the quadratic-SNR rule; for a Constant noise rule the
// subtracted term is sigma0_2 itself).
struct GaussianFixedPoint {
  double sigma_e_inf2 = 0.0;
  double err_inf = 0.0;
};
GaussianFixedPoint gaussian_fixed_point(double sigma_x2, double delta, const NoiseModel& noise);

// Random-matrix-theory MSE of the Gaussian-prior linear system:
//   (delta/2) [(-sw2 + c sx2) + sqrt((sw2 + c sx2)^2 + 4 sw2 sx2)], c = (1-delta)/delta.
double rmt_gaussian_mse(double sigma_x2, double sigma_w2, double delta);

}  // namespace qsnr::state_evolution
