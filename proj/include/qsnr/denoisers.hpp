#pragma once

// Component-wise estimators eta and their derivatives: soft thresholding
// (real/complex) and the Bernoulli-Gaussian posterior mean (real/complex with
// all four partial derivatives).

#include <complex>

#include "qsnr/priors.hpp"

namespace qsnr::denoisers {

using priors::Domain;
using priors::Prior;
using priors::PriorKind;

// Immutable per-iteration denoiser parameters. For soft thresholding the
// threshold is lambda = alpha * sigma_e; for the Bernoulli-Gaussian posterior
// mean the Wiener gain R = sigma_x2 / (sigma_e2 + sigma_x2) is cached.
struct DenoiserState {
  Prior prior;
  double sigma_e2 = 1.0;  // equivalent-noise variance (sigma_e^t)^2
  double lambda = 0.0;    // soft threshold (soft-threshold denoisers only)
  double R = 0.0;         // Wiener gain (Gaussian/BG denoisers only)

  // Soft-threshold state with lambda = alpha * sqrt(sigma_e2).
  static DenoiserState soft(const Prior& p, double sigma_e2, double alpha);
  // Posterior-mean state for a Gaussian or Bernoulli-Gaussian prior.
  static DenoiserState bg(const Prior& p, double sigma_e2);
};

// eta(beta) = sign(beta) * max(|beta| - lambda, 0).
double soft_threshold_real(double beta, double lambda);

// eta'(beta); exactly at |beta| = lambda the dead-zone branch (0) applies.
double soft_threshold_real_deriv(double beta, double lambda);

// eta(beta) = (beta - lambda*beta/|beta|) * 1{|beta| > lambda}: shrinks the
// modulus by lambda, preserves the phase.
std::complex<double> soft_threshold_complex(std::complex<double> beta, double lambda);

// Mean of the two diagonal Wirtinger-style partials,
// (d eta^R/d beta^R + d eta^I/d beta^I)/2 = (1 - lambda/(2|beta|)) 1{|beta|>lambda};
// this is the per-entry contribution to the complex Onsager factor.
double soft_threshold_complex_divergence(std::complex<double> beta, double lambda);

// Posterior mean under the real BG prior: eta(beta) = R*beta / (1 + v3) with
// v3 = v1 * exp(-v2 beta^2 / 2), v1 = (1-eps)/eps * sqrt((sigma_e2+sigma_x2)/sigma_e2),
// v2 = R/sigma_e2. The ratio form evaluates the two mixture log-densities and
// exponentiates their difference, so nothing overflows for |beta| >> sigma_e.
double bg_eta_real(double beta, const DenoiserState& s);

// d eta/d beta = R/(v3+1) + R v3 v2 beta^2/(v3+1)^2, in (0, 1).
double bg_eta_real_deriv(double beta, const DenoiserState& s);

// Complex BG posterior mean: same gain structure with circular complex
// Gaussian densities, eta(beta) = R*beta / (1 + w3),
// w3 = (1-eps)/eps * (s1/s2) * exp(-v2 |beta|^2), s1 = sigma_e2 + sigma_x2,
// s2 = sigma_e2, v2 = R/sigma_e2. Phase-equivariant.
std::complex<double> bg_eta_complex(std::complex<double> beta, const DenoiserState& s);

// The four partials d eta^{R,I} / d beta^{R,I}; dRI == dIR by symmetry.
struct ComplexPartials {
  double dRR = 0.0, dRI = 0.0, dIR = 0.0, dII = 0.0;
};
ComplexPartials bg_eta_complex_partials(std::complex<double> beta, const DenoiserState& s);

}  // namespace qsnr::denoisers
