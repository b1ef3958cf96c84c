#include "qsnr/denoisers.hpp"

#include <cmath>

namespace qsnr::denoisers {

namespace {

// exp(log_w) saturates well before inf so downstream ratios stay finite.
double exp_clamped(double log_w) {
  if (log_w > 700.0) return std::exp(700.0);
  return std::exp(log_w);
}

}  // namespace

DenoiserState DenoiserState::soft(const Prior& p, double sigma_e2, double alpha) {
  if (!(sigma_e2 > 0.0)) throw InvalidSpecError("DenoiserState: sigma_e2 must be > 0");
  if (!(alpha >= 0.0)) throw InvalidSpecError("DenoiserState: alpha must be >= 0");
  DenoiserState s;
  s.prior = p;
  s.sigma_e2 = sigma_e2;
  s.lambda = alpha * std::sqrt(sigma_e2);
  return s;
}

DenoiserState DenoiserState::bg(const Prior& p, double sigma_e2) {
  if (!(sigma_e2 > 0.0)) throw InvalidSpecError("DenoiserState: sigma_e2 must be > 0");
  if (p.kind == PriorKind::LeastFavorable)
    throw InvalidSpecError("DenoiserState::bg: prior must be Gaussian or Bernoulli-Gaussian");
  DenoiserState s;
  s.prior = p;
  s.sigma_e2 = sigma_e2;
  s.R = p.sigma_x2 / (sigma_e2 + p.sigma_x2);
  return s;
}

double soft_threshold_real(double beta, double lambda) {
  if (beta > lambda) return beta - lambda;
  if (beta < -lambda) return beta + lambda;
  return 0.0;
}

double soft_threshold_real_deriv(double beta, double lambda) {
  return std::abs(beta) > lambda ? 1.0 : 0.0;
}

std::complex<double> soft_threshold_complex(std::complex<double> beta, double lambda) {
  const double mod = std::abs(beta);
  if (!(mod > lambda)) return {0.0, 0.0};
  const double shrink = 1.0 - lambda / mod;
  return {beta.real() * shrink, beta.imag() * shrink};
}

double soft_threshold_complex_divergence(std::complex<double> beta, double lambda) {
  // d eta^R/d beta^R = 1 - (lambda/|b|) (b_I/|b|)^2, d eta^I/d beta^I symmetric;
  // their mean collapses to 1 - lambda/(2|b|) on the active set.
  const double mod = std::abs(beta);
  if (!(mod > lambda)) return 0.0;
  return 1.0 - 0.5 * lambda / mod;
}

// Log of the mixture-density ratio weight v3 (real case):
//   v3 = (1-eps)/eps * sqrt(s1/s2) * exp(-v2 beta^2 / 2)
// computed as a difference of log-densities so extreme betas just underflow.
double bg_eta_real(double beta, const DenoiserState& s) {
  const double eps = s.prior.epsilon;
  if (eps >= 1.0) return s.R * beta;  // pure Wiener gain
  const double s2 = s.sigma_e2;
  const double s1 = s2 + s.prior.sigma_x2;
  const double v2 = s.R / s2;
  const double log_v3 =
      std::log1p(-eps) - std::log(eps) + 0.5 * (std::log(s1) - std::log(s2)) -
      0.5 * v2 * beta * beta;
  const double v3 = exp_clamped(log_v3);
  return s.R * beta / (1.0 + v3);
}

double bg_eta_real_deriv(double beta, const DenoiserState& s) {
  const double eps = s.prior.epsilon;
  if (eps >= 1.0) return s.R;
  const double s2 = s.sigma_e2;
  const double s1 = s2 + s.prior.sigma_x2;
  const double v2 = s.R / s2;
  const double log_v3 =
      std::log1p(-eps) - std::log(eps) + 0.5 * (std::log(s1) - std::log(s2)) -
      0.5 * v2 * beta * beta;
  if (log_v3 > 700.0) return 0.0;  // deep dead zone: both terms vanish
  const double v3 = std::exp(log_v3);
  const double g = 1.0 + v3;
  return s.R / g + s.R * v3 * v2 * beta * beta / (g * g);
}

// Complex weight w3 = (1-eps)/eps * (s1/s2) * exp(-v2 |beta|^2); the density
// ratio of circular complex Gaussians carries s1/s2 (not its square root) and
// a full |beta|^2 in the exponent.
namespace {

double log_w3_complex(std::complex<double> beta, const DenoiserState& s) {
  const double eps = s.prior.epsilon;
  const double s2 = s.sigma_e2;
  const double s1 = s2 + s.prior.sigma_x2;
  const double v2 = s.R / s2;
  return std::log1p(-eps) - std::log(eps) + (std::log(s1) - std::log(s2)) -
         v2 * std::norm(beta);
}

}  // namespace

std::complex<double> bg_eta_complex(std::complex<double> beta, const DenoiserState& s) {
  if (s.prior.epsilon >= 1.0) return std::complex<double>(s.R * beta.real(), s.R * beta.imag());
  const double w3 = exp_clamped(log_w3_complex(beta, s));
  const double g = s.R / (1.0 + w3);
  return {g * beta.real(), g * beta.imag()};
}

ComplexPartials bg_eta_complex_partials(std::complex<double> beta, const DenoiserState& s) {
  ComplexPartials d;
  if (s.prior.epsilon >= 1.0) {
    d.dRR = d.dII = s.R;
    return d;
  }
  const double log_w3 = log_w3_complex(beta, s);
  if (log_w3 > 700.0) return d;  // all four vanish deep in the dead zone
  const double w3 = std::exp(log_w3);
  const double g = 1.0 + w3;
  const double v2 = s.R / s.sigma_e2;
  const double diag = s.R / g;
  // Gradient of the gain: d/d beta^R [1/(1+w3)] = 2 v2 w3 beta^R / (1+w3)^2.
  const double k = 2.0 * s.R * v2 * w3 / (g * g);
  const double br = beta.real(), bi = beta.imag();
  d.dRR = diag + k * br * br;
  d.dII = diag + k * bi * bi;
  d.dRI = d.dIR = k * br * bi;
  return d;
}

}  // namespace qsnr::denoisers
