#include "qsnr/amp.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "qsnr/denoisers.hpp"
#include "qsnr/errors.hpp"
#include "qsnr/risk.hpp"
#include "qsnr/rng.hpp"

namespace qsnr::amp {

namespace {

using denoisers::DenoiserState;
using priors::PriorKind;

// --- instance assembly ------------------------------------------------------

double matrix_entry(const rng::Stream& s, std::uint64_t k, double scale, double*) {
  return scale * s.normal_pair(k).first;
}

std::complex<double> matrix_entry(const rng::Stream& s, std::uint64_t k, double scale,
                                  std::complex<double>*) {
  const auto [re, im] = s.normal_pair(k);
  return {scale * re, scale * im};
}

double noise_entry(const rng::Stream& s, std::uint64_t i, double sigma_w2, double*) {
  return std::sqrt(sigma_w2) * s.normal_pair(i).first;
}

std::complex<double> noise_entry(const rng::Stream& s, std::uint64_t i, double sigma_w2,
                                 std::complex<double>*) {
  const double sd = std::sqrt(0.5 * sigma_w2);  // per-part variance sigma_w2/2
  const auto [re, im] = s.normal_pair(i);
  return {sd * re, sd * im};
}

template <class Scalar>
double entry_scale(std::size_t m, double*) {
  return std::sqrt(1.0 / static_cast<double>(m));
}
template <class Scalar>
double entry_scale(std::size_t m, std::complex<double>*) {
  return std::sqrt(0.5 / static_cast<double>(m));  // per-part variance 1/(2m)
}

// --- denoiser dispatch ------------------------------------------------------

// Resolved once per run: soft threshold (least-favorable prior) or the
// Bayes posterior mean (Gaussian = Bernoulli-Gaussian at epsilon 1).
struct DenoiserPlan {
  bool soft = false;
  double alpha = 0.0;
  Prior bg_prior;
};

DenoiserPlan plan_for(const Prior& prior, const AMPConfig& cfg) {
  DenoiserPlan pl;
  if (prior.kind == PriorKind::LeastFavorable) {
    pl.soft = true;
    pl.alpha = alpha_is_auto(cfg.threshold_alpha)
                   ? risk::optimal_alpha(prior.epsilon, prior.domain).alpha_dagger
                   : cfg.threshold_alpha;
    if (!(pl.alpha >= 0.0))
      throw InvalidSpecError("amp_run: threshold_alpha must be >= 0, got " +
                             std::to_string(pl.alpha));
  } else {
    pl.bg_prior = prior;
  }
  return pl;
}

// Applies eta entrywise (beta -> out) and returns the entry mean of eta'
// (complex: of (dRR + dII)/2, the per-entry Onsager contribution).
double apply_eta(const DenoiserPlan& pl, double sigma_e2, const std::vector<double>& beta,
                 std::vector<double>& out) {
  const std::size_t n = beta.size();
  out.resize(n);
  double acc = 0.0;
  if (pl.soft) {
    const double lambda = pl.alpha * std::sqrt(sigma_e2);
    for (std::size_t i = 0; i < n; ++i) {
      out[i] = denoisers::soft_threshold_real(beta[i], lambda);
      acc += denoisers::soft_threshold_real_deriv(beta[i], lambda);
    }
  } else {
    const DenoiserState s = DenoiserState::bg(pl.bg_prior, sigma_e2);
    for (std::size_t i = 0; i < n; ++i) {
      out[i] = denoisers::bg_eta_real(beta[i], s);
      acc += denoisers::bg_eta_real_deriv(beta[i], s);
    }
  }
  return acc / static_cast<double>(n);
}

double apply_eta(const DenoiserPlan& pl, double sigma_e2,
                 const std::vector<std::complex<double>>& beta,
                 std::vector<std::complex<double>>& out) {
  const std::size_t n = beta.size();
  out.resize(n);
  double acc = 0.0;
  if (pl.soft) {
    const double lambda = pl.alpha * std::sqrt(sigma_e2);
    for (std::size_t i = 0; i < n; ++i) {
      out[i] = denoisers::soft_threshold_complex(beta[i], lambda);
      acc += denoisers::soft_threshold_complex_divergence(beta[i], lambda);
    }
  } else {
    const DenoiserState s = DenoiserState::bg(pl.bg_prior, sigma_e2);
    for (std::size_t i = 0; i < n; ++i) {
      out[i] = denoisers::bg_eta_complex(beta[i], s);
      const auto d = denoisers::bg_eta_complex_partials(beta[i], s);
      acc += 0.5 * (d.dRR + d.dII);
    }
  }
  return acc / static_cast<double>(n);
}

template <class Scalar>
double mse_against(const std::vector<Scalar>& x, const std::vector<Scalar>& x_true) {
  double acc = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const auto d = x[i] - x_true[i];
    if constexpr (std::is_same_v<Scalar, double>)
      acc += d * d;
    else
      acc += std::norm(d);
  }
  return acc / static_cast<double>(x.size());
}

double residual_sigma_e2(const std::vector<double>& r) {
  return r.empty() ? 0.0 : linalg::norm2sq(r) / static_cast<double>(r.size());
}
double residual_sigma_e2(const std::vector<std::complex<double>>& r) {
  return r.empty() ? 0.0 : linalg::norm2sq(r) / static_cast<double>(r.size());
}

}  // namespace

template <class Scalar>
Instance<Scalar> make_instance(const Prior& prior, std::size_t n, double delta,
                               const NoiseModel& noise, std::uint64_t seed) {
  if (n < 1) throw InvalidSpecError("make_instance: n must be >= 1");
  if (!(delta > 0.0) || !std::isfinite(delta))
    throw InvalidSpecError("make_instance: delta must be > 0, got " + std::to_string(delta));
  const auto m = static_cast<std::size_t>(
      std::max<long long>(1, std::llround(delta * static_cast<double>(n))));

  Instance<Scalar> inst;
  inst.delta = delta;
  inst.noise = noise;
  inst.seed = seed;
  inst.x_true = priors::sample<Scalar>(prior, n, rng::substream(seed, rng::kTagSignal));

  inst.A = linalg::Matrix<Scalar>(m, n);
  const rng::Stream ms(rng::substream(seed, rng::kTagMatrix));
  const double scale = entry_scale<Scalar>(m, static_cast<Scalar*>(nullptr));
  for (std::size_t k = 0; k < m * n; ++k)
    inst.A.data[k] = matrix_entry(ms, k, scale, static_cast<Scalar*>(nullptr));
  inst.A_adj = linalg::adjoint(inst.A);

  const double sigma_w2 = noise.sigma_w2(delta);  // noise rule at the requested ratio
  const rng::Stream ns(rng::substream(seed, rng::kTagNoise));
  inst.w.resize(m);
  for (std::size_t i = 0; i < m; ++i)
    inst.w[i] = noise_entry(ns, i, sigma_w2, static_cast<Scalar*>(nullptr));

  linalg::matvec_serial(inst.A, inst.x_true, inst.y);
  for (std::size_t i = 0; i < m; ++i) inst.y[i] += inst.w[i];
  return inst;
}

template <class Scalar>
AMPResult<Scalar> amp_run(const Instance<Scalar>& inst, const Prior& prior,
                          const AMPConfig& cfg, const std::vector<double>* se_schedule) {
  if (cfg.max_iter < 1) throw InvalidSpecError("amp_run: max_iter must be >= 1");
  if (!(cfg.rel_tol > 0.0)) throw InvalidSpecError("amp_run: rel_tol must be > 0");

  const std::size_t n = inst.n();
  const std::size_t m = inst.m();
  const double delta_real = static_cast<double>(m) / static_cast<double>(n);
  const DenoiserPlan plan = plan_for(prior, cfg);
  const double signal_scale =
      std::sqrt(static_cast<double>(n) * priors::second_moment(prior));
  const double blowup_limit = 1e6 * std::max(signal_scale, 1e-12);

  AMPResult<Scalar> res;
  std::vector<Scalar> x(n, Scalar{});
  std::vector<Scalar> x_new(n), beta(n), adj_r, ax;
  std::vector<Scalar> r = inst.y;
  res.mse_trace.reserve(cfg.max_iter + 1);
  res.sigma_e2_trace.reserve(cfg.max_iter);
  res.mse_trace.push_back(mse_against(x, inst.x_true));

  for (std::size_t t = 0; t < cfg.max_iter; ++t) {
    double sigma_e2;
    if (cfg.sigma_e_estimator == SigmaEstimator::TheoreticalSE && se_schedule != nullptr &&
        t < se_schedule->size())
      sigma_e2 = (*se_schedule)[t];
    else
      sigma_e2 = residual_sigma_e2(r);
    if (!std::isfinite(sigma_e2))
      throw NumericalBlowupError("amp_run: equivalent-noise estimate turned non-finite");
    res.sigma_e2_trace.push_back(sigma_e2);

    linalg::matvec(inst.A_adj, r, adj_r, cfg.parallel);
    for (std::size_t i = 0; i < n; ++i) beta[i] = adj_r[i] + x[i];

    const double mean_deriv = apply_eta(plan, sigma_e2, beta, x_new);

    const double x_norm2 = linalg::norm2sq(x_new);
    if (!std::isfinite(x_norm2) || std::sqrt(x_norm2) > blowup_limit)
      throw NumericalBlowupError("amp_run: iterate norm exceeded 1e6x the signal scale");

    linalg::matvec(inst.A, x_new, ax, cfg.parallel);
    const double onsager = cfg.onsager_enabled ? mean_deriv / delta_real : 0.0;
    for (std::size_t i = 0; i < m; ++i)
      r[i] = inst.y[i] - ax[i] + static_cast<Scalar>(onsager) * r[i];

    double diff2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const auto d = x_new[i] - x[i];
      if constexpr (std::is_same_v<Scalar, double>)
        diff2 += d * d;
      else
        diff2 += std::norm(d);
    }
    const double rel = std::sqrt(diff2) / std::max(std::sqrt(x_norm2), 1e-300);

    res.mse_trace.push_back(mse_against(x_new, inst.x_true));
    x.swap(x_new);
    res.iters_used = t + 1;
    if (rel <= cfg.rel_tol) {
      res.converged = true;
      break;
    }
  }
  res.x_hat = std::move(x);
  return res;
}

double estimate_sigma_e(const std::vector<double>& r, SigmaEstimator mode,
                        const double* theoretical) {
  if (mode == SigmaEstimator::TheoreticalSE && theoretical != nullptr) return *theoretical;
  return residual_sigma_e2(r);
}
double estimate_sigma_e(const std::vector<std::complex<double>>& r, SigmaEstimator mode,
                        const double* theoretical) {
  if (mode == SigmaEstimator::TheoreticalSE && theoretical != nullptr) return *theoretical;
  return residual_sigma_e2(r);
}

template <class Scalar>
std::vector<DeltaSummary> monte_carlo(const Prior& prior, std::size_t n,
                                      const std::vector<double>& delta_grid,
                                      const NoiseModel& noise, const MonteCarloOptions& opt) {
  if (opt.trials < 1) throw InvalidSpecError("monte_carlo: trials must be >= 1");
  if (delta_grid.empty()) throw InvalidSpecError("monte_carlo: delta grid must be non-empty");

  Prior sample_prior = prior;
  if (prior.kind == PriorKind::LeastFavorable && !opt.lf_sample_three_point)
    sample_prior =
        Prior::bernoulli_gaussian(prior.epsilon, opt.lf_surrogate_sigma_x2, prior.domain);

  std::vector<DeltaSummary> out;
  out.reserve(delta_grid.size());
  const auto trials = static_cast<std::ptrdiff_t>(opt.trials);

  for (double delta : delta_grid) {
    DeltaSummary s;
    s.delta = delta;
    std::vector<double> schedule;
    try {
      const auto trace = state_evolution::se_run(prior, delta, noise,
                                                 state_evolution::SEOptions{});
      if (trace.fixed_point) {
        s.err_se = trace.fixed_point->err;
        s.se_converged = trace.converged;
      } else {
        s.err_se = trace.states.back().err;
        s.se_converged = false;
      }
      if (opt.cfg.sigma_e_estimator == SigmaEstimator::TheoreticalSE) {
        schedule.reserve(trace.states.size());
        for (const auto& st : trace.states) schedule.push_back(st.sigma_e2);
      }
    } catch (const SeDivergedError&) {
      s.err_se = std::numeric_limits<double>::infinity();
      s.se_converged = false;
    }
    const std::vector<double>* sched_ptr = schedule.empty() ? nullptr : &schedule;

    s.records.resize(opt.trials);
    std::vector<char> blown(opt.trials, 0), capped_flag(opt.trials, 0);
    std::string first_error;

#pragma omp parallel for schedule(dynamic) if (opt.cfg.parallel)
    for (std::ptrdiff_t i = 0; i < trials; ++i) {
      const std::uint64_t seed = opt.base_seed + static_cast<std::uint64_t>(i);
      TrialRecord rec;
      rec.delta = delta;
      rec.n = n;
      rec.seed = seed;
      rec.se_predicted_mse = s.err_se;
      try {
        const auto inst = make_instance<Scalar>(sample_prior, n, delta, noise, seed);
        const auto run = amp_run<Scalar>(inst, prior, opt.cfg, sched_ptr);
        rec.iters_used = run.iters_used;
        rec.empirical_mse = run.mse_trace.back();
        if (!run.converged) capped_flag[i] = 1;
      } catch (const NumericalBlowupError&) {
        blown[i] = 1;
        rec.iters_used = opt.cfg.max_iter;
        rec.empirical_mse = std::numeric_limits<double>::quiet_NaN();
      } catch (const std::exception& e) {
#pragma omp critical
        if (first_error.empty()) first_error = e.what();
      }
      s.records[i] = rec;
    }
    if (!first_error.empty()) throw Error("monte_carlo: trial failed: " + first_error);

    // Serial aggregation in trial order keeps the output independent of the
    // thread count.
    double sum = 0.0;
    std::size_t k = 0;
    for (std::size_t i = 0; i < opt.trials; ++i) {
      if (blown[i]) {
        ++s.fail_count;
        continue;
      }
      sum += s.records[i].empirical_mse;
      ++k;
      if (capped_flag[i]) ++s.capped;
    }
    if (k > 0) {
      s.err_empirical = sum / static_cast<double>(k);
      double ss = 0.0;
      for (std::size_t i = 0; i < opt.trials; ++i) {
        if (blown[i]) continue;
        const double d = s.records[i].empirical_mse - s.err_empirical;
        ss += d * d;
      }
      s.stderr_mean = k > 1 ? std::sqrt(ss / static_cast<double>(k - 1) /
                                        static_cast<double>(k))
                            : 0.0;
    } else {
      s.err_empirical = std::numeric_limits<double>::quiet_NaN();
      s.stderr_mean = std::numeric_limits<double>::quiet_NaN();
    }
    out.push_back(std::move(s));
  }
  return out;
}

template Instance<double> make_instance<double>(const Prior&, std::size_t, double,
                                                const NoiseModel&, std::uint64_t);
template Instance<std::complex<double>> make_instance<std::complex<double>>(
    const Prior&, std::size_t, double, const NoiseModel&, std::uint64_t);
template AMPResult<double> amp_run<double>(const Instance<double>&, const Prior&,
                                           const AMPConfig&, const std::vector<double>*);
template AMPResult<std::complex<double>> amp_run<std::complex<double>>(
    const Instance<std::complex<double>>&, const Prior&, const AMPConfig&,
    const std::vector<double>*);
template std::vector<DeltaSummary> monte_carlo<double>(const Prior&, std::size_t,
                                                       const std::vector<double>&,
                                                       const NoiseModel&,
                                                       const MonteCarloOptions&);
template std::vector<DeltaSummary> monte_carlo<std::complex<double>>(
    const Prior&, std::size_t, const std::vector<double>&, const NoiseModel&,
    const MonteCarloOptions&);

}  // namespace qsnr::amp
