#pragma once

// Risk functions of the soft-threshold and Bernoulli-Gaussian denoisers:
// the worst-case normalized risks M / M_C and their finite-amplitude form,
// the optimal threshold multiplier alpha-dagger, the Gaussian-weighted
// integrals I / I_C, and the per-iteration MSE formulas.

#include <complex>
#include <vector>

#include "qsnr/denoisers.hpp"
#include "qsnr/priors.hpp"

namespace qsnr::risk {

using priors::Domain;

// Arguments of the finite-amplitude soft-threshold risk.
struct RiskParams {
  double epsilon = 1.0;  // sparsity fraction, 0 < epsilon <= 1
  double alpha = 0.0;    // threshold multiplier, lambda = alpha * sigma_e
  double mu = 10.0;      // nonzero amplitude (finite surrogate)
  double sigma_e = 1.0;  // equivalent-noise standard deviation
  Domain domain = Domain::Real;
};

// Normalized soft-threshold risk for the three-point prior at finite mu
// (real domain): epsilon times the risk at amplitude mu plus (1-epsilon)
// times the zero-signal risk, each divided by sigma_e^2.
double m_finite_mu(const RiskParams& p);

// Worst-case (mu -> inf) normalized risk, real domain:
//   M(eps, alpha) = eps (1+alpha^2) + (1-eps) [2 (1+alpha^2) Phi(-alpha) - 2 alpha phi(alpha)].
double m_worst_case(double epsilon, double alpha);

// Complex-domain analogue:
//   M_C(eps, alpha) = eps (1+alpha^2)
//                   + (1-eps) [sqrt(2 pi) phi(sqrt(2) alpha) - 2 alpha sqrt(pi) Phi(-sqrt(2) alpha)].
double m_worst_case_complex(double epsilon, double alpha);

// Golden-section minimizer of the worst-case risk over alpha in [0, 10].
struct AlphaResult {
  double alpha_dagger = 0.0;
  double m_value = 1.0;
};
AlphaResult optimal_alpha(double epsilon, Domain domain);

// I(R, eps) = integral of phi(x) x^2 / (1 + (1-eps)/(eps sqrt(1-R)) exp(-R x^2 / (2(1-R)))) dx,
// in (0, 1]. Memoized on (R, eps) rounded to 1e-12 (per-thread cache).
double i_integral(double R, double epsilon);

// Complex counterpart of I, reduced by isotropy to the radial form
//   I_C(R, eps) = 2 int_0^inf r^3 e^{-r^2} / (1 + (1-eps)/(eps (1-R)) e^{-R r^2/(1-R)}) dr.
// The 2-D tensor-grid evaluation lives only in the tests as an oracle.
double i_integral_complex(double R, double epsilon);

// Worst-case soft-threshold MSE per iteration: M(eps, alpha) * sigma_e2
// (the same formula serves both domains with the domain's M).
double err_lf(double epsilon, double alpha_dagger, double sigma_e2, Domain domain);

// Bernoulli-Gaussian MMSE per iteration, evaluated in the cancellation-free
// form eps * sigma_x2 * (1 - R * I(R, eps)) with R = sigma_x2/(sigma_e2+sigma_x2).
// Complex inputs give the total (both-parts) MSE.
double err_bg(double epsilon, double sigma_x2, double sigma_e2, Domain domain);

// Sample-based shortcut: mean of eta'(beta) over the entries times sigma_e2
// (complex: mean of d eta^R/d beta^R times sigma_e2, which is already the
// total MSE since the two parts contribute equally).
double err_bg_empirical(const std::vector<double>& beta, const denoisers::DenoiserState& s);
double err_bg_empirical(const std::vector<std::complex<double>>& beta,
                        const denoisers::DenoiserState& s);

}  // namespace qsnr::risk
