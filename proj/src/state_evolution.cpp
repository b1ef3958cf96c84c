#include "qsnr/state_evolution.hpp"

#include <cmath>
#include <string>

#include "qsnr/risk.hpp"

namespace qsnr::state_evolution {

using priors::PriorKind;

namespace {

constexpr double kBlowupFactor = 1e6;     // sigma_e2 above this multiple of start
constexpr int kMaxConsecutiveRises = 50;  // ... or this many rises = divergence

}  // namespace

SETrace se_run(const Prior& prior, double delta, const NoiseModel& noise, const SEOptions& opt) {
  if (!(delta > 0.0)) throw InvalidSpecError("se_run: delta must be > 0");
  if (!(opt.tol > 0.0)) throw InvalidSpecError("se_run: tol must be > 0");
  if (opt.max_iter < 1) throw InvalidSpecError("se_run: max_iter must be >= 1");

  const double sw2 = noise.sigma_w2(delta);
  const double ex2 = priors::second_moment(prior);

  // Per-iteration MSE at the current equivalent-noise level.
  risk::AlphaResult alpha{};
  if (prior.kind == PriorKind::LeastFavorable) {
    alpha = risk::optimal_alpha(prior.epsilon, prior.domain);
    if (!opt.lf_finite_mu && alpha.m_value >= delta)
      throw SeDivergedError("se_run: least-favorable recursion has ratio M/delta = " +
                            std::to_string(alpha.m_value / delta) + " >= 1 at delta = " +
                            std::to_string(delta));
  }
  auto err_at = [&](double sigma_e2) {
    switch (prior.kind) {
      case PriorKind::LeastFavorable:
        if (opt.lf_finite_mu) {
          risk::RiskParams rp;
          rp.epsilon = prior.epsilon;
          rp.alpha = alpha.alpha_dagger;
          rp.mu = prior.mu;
          rp.sigma_e = std::sqrt(sigma_e2);
          rp.domain = prior.domain;
          return risk::m_finite_mu(rp) * sigma_e2;
        }
        return risk::err_lf(prior.epsilon, alpha.alpha_dagger, sigma_e2, prior.domain);
      case PriorKind::Gaussian:
      case PriorKind::BernoulliGaussian:
        return risk::err_bg(prior.epsilon, prior.sigma_x2, sigma_e2, prior.domain);
    }
    return 0.0;  // unreachable
  };

  SETrace trace;
  trace.delta = delta;
  const double v0 = ex2 / delta + sw2;
  trace.states.push_back({0, v0, ex2});

  bool nonincreasing = true;
  int rises = 0;
  double v = v0;
  for (int t = 1; t <= opt.max_iter; ++t) {
    const double err = err_at(v);
    const double v_next = err / delta + sw2;
    trace.states.push_back({t, v_next, err});
    if (!std::isfinite(v_next))
      throw SeDivergedError("se_run: state evolution produced a non-finite value");
    if (v_next > v) {
      nonincreasing = false;
      if (++rises >= kMaxConsecutiveRises)
        throw SeDivergedError("se_run: sigma_e2 increased " +
                              std::to_string(kMaxConsecutiveRises) +
                              " consecutive iterations at delta = " + std::to_string(delta));
    } else {
      rises = 0;
    }
    if (v_next > kBlowupFactor * v0)
      throw SeDivergedError("se_run: sigma_e2 exceeded 1e6x its initial value at delta = " +
                            std::to_string(delta));
    if (std::abs(v_next - v) <= opt.tol * v) {
      trace.fixed_point = trace.states.back();
      trace.converged = nonincreasing;
      break;
    }
    v = v_next;
  }
  return trace;
}

SETrace se_run(const Prior& prior, double delta, const NoiseModel& noise, int max_iter,
               double tol) {
  SEOptions opt;
  opt.max_iter = max_iter;
  opt.tol = tol;
  return se_run(prior, delta, noise, opt);
}

GaussianFixedPoint gaussian_fixed_point(double sigma_x2, double delta, const NoiseModel& noise) {
  if (!(delta > 0.0)) throw InvalidSpecError("gaussian_fixed_point: delta must be > 0");
  const double sw2 = noise.sigma_w2(delta);
  const double c = (1.0 - delta) / delta;
  const double b = c * sigma_x2 + sw2;  // sw2 = delta*sigma0_2 under quadratic SNR
  GaussianFixedPoint fp;
  fp.sigma_e_inf2 = 0.5 * (b + std::sqrt(b * b + 4.0 * sigma_x2 * sw2));
  fp.err_inf = delta * (fp.sigma_e_inf2 - sw2);
  return fp;
}

double rmt_gaussian_mse(double sigma_x2, double sigma_w2, double delta) {
  if (!(delta > 0.0)) throw InvalidSpecError("rmt_gaussian_mse: delta must be > 0");
  const double c = (1.0 - delta) / delta;
  const double a = sigma_w2 + c * sigma_x2;
  return 0.5 * delta * ((-sigma_w2 + c * sigma_x2) + std::sqrt(a * a + 4.0 * sigma_w2 * sigma_x2));
}

}  // namespace qsnr::state_evolution
