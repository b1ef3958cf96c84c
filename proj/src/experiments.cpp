#include "qsnr/experiments.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <ostream>

#include "qsnr/designer.hpp"
#include "qsnr/errors.hpp"
#include "qsnr/risk.hpp"

namespace qsnr::experiments {

namespace {

const char* prior_name(PriorKind k) {
  switch (k) {
    case PriorKind::Gaussian:
      return "gaussian";
    case PriorKind::BernoulliGaussian:
      return "bernoulli_gaussian";
    case PriorKind::LeastFavorable:
      return "least_favorable";
  }
  return "?";
}

const char* domain_name(Domain d) { return d == Domain::Real ? "real" : "complex"; }

void check_grid(const GridSpec& g, const char* field) {
  if (!(g.min < g.max))
    throw InvalidSpecError(std::string(field) + ": min must be < max");
  if (g.steps < 2) throw InvalidSpecError(std::string(field) + ": steps must be >= 2");
  if (g.log_scale && !(g.min > 0.0))
    throw InvalidSpecError(std::string(field) + ": log-scale min must be > 0");
  if (!std::isfinite(g.min) || !std::isfinite(g.max))
    throw InvalidSpecError(std::string(field) + ": bounds must be finite");
}

std::string bool_cell(bool b) { return b ? "1" : "0"; }

}  // namespace

std::vector<double> GridSpec::points() const {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(steps));
  const double a = log_scale ? std::log(min) : min;
  const double b = log_scale ? std::log(max) : max;
  for (int i = 0; i < steps; ++i) {
    const double v = a + (b - a) * static_cast<double>(i) / static_cast<double>(steps - 1);
    out.push_back(log_scale ? std::exp(v) : v);
  }
  return out;
}

std::string fmt_g(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

priors::Prior make_prior(const ExperimentSpec& spec) {
  switch (spec.prior_kind) {
    case PriorKind::Gaussian:
      return priors::Prior::gaussian(spec.sigma_x2, spec.domain);
    case PriorKind::BernoulliGaussian:
      return priors::Prior::bernoulli_gaussian(spec.epsilon, spec.sigma_x2, spec.domain);
    case PriorKind::LeastFavorable:
      return priors::Prior::least_favorable(spec.epsilon, spec.mu, spec.domain);
  }
  throw InvalidSpecError("prior: unknown kind");
}

state_evolution::NoiseModel make_noise(const ExperimentSpec& spec) {
  if (!(spec.sigma0_2 >= 0.0) || !std::isfinite(spec.sigma0_2))
    throw InvalidSpecError("sigma0_2: must be a finite value >= 0");
  return {spec.sigma0_2, spec.noise_rule};
}

void validate(const ExperimentSpec& spec) {
  make_prior(spec);  // factory checks name epsilon/sigma_x2/mu
  make_noise(spec);
  switch (spec.command) {
    case Command::SeCurve:
      check_grid(spec.delta_grid, "delta_grid");
      break;
    case Command::Design:
      if (!(spec.sigma0_2 > 0.0)) throw InvalidSpecError("sigma0_2: designers need > 0");
      if (spec.design_sweep_sigma0) check_grid(spec.sigma0_grid, "sigma0_grid");
      break;
    case Command::MonteCarlo:
      check_grid(spec.delta_grid, "delta_grid");
      if (spec.n < 1) throw InvalidSpecError("n: must be >= 1");
      if (spec.trials < 1) throw InvalidSpecError("trials: must be >= 1");
      if (spec.max_iter < 1) throw InvalidSpecError("max_iter: must be >= 1");
      if (!(spec.rel_tol > 0.0)) throw InvalidSpecError("rel_tol: must be > 0");
      if (!(spec.lf_surrogate_sigma_x2 > 0.0))
        throw InvalidSpecError("lf_surrogate_sigma_x2: must be > 0");
      if (!std::isnan(spec.threshold_alpha) && !(spec.threshold_alpha >= 0.0))
        throw InvalidSpecError("threshold_alpha: must be >= 0 (or omitted for alpha-dagger)");
      break;
    case Command::RegionSweep:
      check_grid(spec.sigma0_grid, "sigma0_grid");
      check_grid(spec.epsilon_grid, "epsilon_grid");
      if (!(spec.sigma_x2 > 0.0)) throw InvalidSpecError("sigma_x2: must be > 0");
      if (!(spec.epsilon_grid.min > 0.0) || !(spec.epsilon_grid.max <= 1.0))
        throw InvalidSpecError("epsilon_grid: must lie in (0, 1]");
      break;
    case Command::Risk:
      check_grid(spec.epsilon_grid, "epsilon_grid");
      if (!(spec.epsilon_grid.min > 0.0) || !(spec.epsilon_grid.max <= 1.0))
        throw InvalidSpecError("epsilon_grid: must lie in (0, 1]");
      break;
  }
}

void cmd_se_curve(const ExperimentSpec& spec, std::ostream& csv) {
  const auto prior = make_prior(spec);
  const auto noise = make_noise(spec);
  state_evolution::SEOptions opt;
  opt.lf_finite_mu = spec.lf_finite_mu;
  csv << "delta,err_se,converged\n";
  for (double delta : spec.delta_grid.points()) {
    double err;
    bool converged;
    try {
      const auto trace = state_evolution::se_run(prior, delta, noise, opt);
      err = trace.fixed_point ? trace.fixed_point->err : trace.states.back().err;
      converged = trace.converged;
    } catch (const SeDivergedError&) {
      err = std::numeric_limits<double>::infinity();
      converged = false;
    }
    csv << fmt_g(delta) << ',' << fmt_g(err) << ',' << bool_cell(converged) << '\n';
  }
}

namespace {

designer::DesignResult run_designer(const ExperimentSpec& spec, double sigma0_2) {
  switch (spec.prior_kind) {
    case PriorKind::Gaussian:
      return designer::design_gaussian(spec.sigma_x2, sigma0_2);
    case PriorKind::BernoulliGaussian:
      return designer::design_bg(spec.epsilon, spec.sigma_x2, sigma0_2, spec.domain);
    case PriorKind::LeastFavorable:
      return designer::design_lf(spec.epsilon, spec.domain, sigma0_2);
  }
  throw InvalidSpecError("prior: unknown kind");
}

void design_row(const ExperimentSpec& spec, double sigma0_2, const designer::DesignResult& r,
                std::ostream& csv) {
  const bool lf = spec.prior_kind == PriorKind::LeastFavorable;
  const double eps = spec.prior_kind == PriorKind::Gaussian ? 1.0 : spec.epsilon;
  csv << prior_name(spec.prior_kind) << ',' << domain_name(spec.domain) << ',' << fmt_g(eps)
      << ',' << (lf ? "nan" : fmt_g(spec.sigma_x2)) << ',' << fmt_g(sigma0_2) << ','
      << fmt_g(r.delta_dagger) << ',' << fmt_g(r.err_min) << ',' << bool_cell(r.under_one)
      << ',' << bool_cell(r.under_two) << '\n';
}

}  // namespace

void cmd_design(const ExperimentSpec& spec, std::ostream& csv, std::ostream& summary) {
  csv << "prior,domain,epsilon,sigma_x2,sigma0_2,delta_dagger,err_min,under_one,under_two\n";
  if (spec.design_sweep_sigma0) {
    for (double s0 : spec.sigma0_grid.points()) design_row(spec, s0, run_designer(spec, s0), csv);
    summary << "design sweep over " << spec.sigma0_grid.steps << " sigma0_2 values ("
            << prior_name(spec.prior_kind) << ", " << domain_name(spec.domain) << ")\n";
    return;
  }
  const auto r = run_designer(spec, spec.sigma0_2);
  design_row(spec, spec.sigma0_2, r, csv);
  summary << "prior           " << prior_name(spec.prior_kind) << " (" << domain_name(spec.domain)
          << ")\n"
          << "delta_dagger    " << fmt_g(r.delta_dagger) << "\n"
          << "err_min         " << fmt_g(r.err_min) << "\n"
          << "sigma_e_inf2    " << fmt_g(r.sigma_e_inf2) << "\n"
          << "under_one       " << (r.under_one ? "yes" : "no") << "\n"
          << "under_two       " << (r.under_two ? "yes" : "no") << "\n";
  if (spec.prior_kind == PriorKind::LeastFavorable)
    summary << "alpha_dagger    " << fmt_g(r.alpha_dagger) << "\n"
            << "m_value         " << fmt_g(r.m_value) << "\n";
  if (spec.prior_kind == PriorKind::BernoulliGaussian && r.sign_changes != 1)
    summary << "note: bracket scan saw " << r.sign_changes << " sign changes\n";
}

void cmd_monte_carlo(const ExperimentSpec& spec, std::ostream& csv) {
  const auto prior = make_prior(spec);
  const auto noise = make_noise(spec);
  amp::MonteCarloOptions opt;
  opt.trials = spec.trials;
  opt.base_seed = spec.seed;
  opt.cfg.max_iter = spec.max_iter;
  opt.cfg.rel_tol = spec.rel_tol;
  opt.cfg.sigma_e_estimator = spec.estimator;
  opt.cfg.onsager_enabled = spec.onsager;
  opt.cfg.threshold_alpha = spec.threshold_alpha;
  opt.lf_surrogate_sigma_x2 = spec.lf_surrogate_sigma_x2;
  opt.lf_sample_three_point = spec.lf_three_point;

  const auto grid = spec.delta_grid.points();
  const auto summaries = spec.domain == Domain::Real
                             ? amp::monte_carlo<double>(prior, spec.n, grid, noise, opt)
                             : amp::monte_carlo<std::complex<double>>(prior, spec.n, grid,
                                                                     noise, opt);
  csv << "delta,err_se,err_empirical,stderr,fail_count\n";
  std::string dead_point;
  for (const auto& s : summaries) {
    csv << fmt_g(s.delta) << ',' << fmt_g(s.err_se) << ',' << fmt_g(s.err_empirical) << ','
        << fmt_g(s.stderr_mean) << ',' << s.fail_count << '\n';
    if (s.fail_count >= spec.trials && dead_point.empty()) dead_point = fmt_g(s.delta);
  }
  if (!dead_point.empty())
    throw AllTrialsFailedError("monte_carlo: every trial blew up at delta=" + dead_point);
}

void cmd_region_sweep(const ExperimentSpec& spec, std::ostream& csv) {
  const auto cells = designer::region_sweep_bg(spec.sigma_x2, spec.sigma0_grid.points(),
                                               spec.epsilon_grid.points(), spec.domain);
  csv << "sigma0_2,epsilon,delta_dagger,under_one\n";
  for (const auto& c : cells) {
    csv << fmt_g(c.sigma0_2) << ',' << fmt_g(c.epsilon) << ',';
    if (c.result)
      csv << fmt_g(c.result->delta_dagger) << ',' << bool_cell(c.result->under_one);
    else
      csv << ',';
    csv << '\n';
  }
}

void cmd_risk(const ExperimentSpec& spec, std::ostream& csv) {
  csv << "epsilon,alpha_dagger,m_value\n";
  for (double eps : spec.epsilon_grid.points()) {
    const auto a = risk::optimal_alpha(eps, spec.domain);
    csv << fmt_g(eps) << ',' << fmt_g(a.alpha_dagger) << ',' << fmt_g(a.m_value) << '\n';
  }
}

void run_command(const ExperimentSpec& spec, std::ostream& summary) {
  validate(spec);
  std::ofstream file;
  const bool to_file = !spec.output_path.empty();
  if (to_file) {
    file.open(spec.output_path, std::ios::out | std::ios::trunc);
    if (!file) throw Error("output_path: cannot open '" + spec.output_path + "' for writing");
  }
  std::ostream& csv = to_file ? static_cast<std::ostream&>(file) : std::cout;

  switch (spec.command) {
    case Command::SeCurve:
      cmd_se_curve(spec, csv);
      break;
    case Command::Design:
      cmd_design(spec, csv, summary);
      break;
    case Command::MonteCarlo:
      cmd_monte_carlo(spec, csv);
      break;
    case Command::RegionSweep:
      cmd_region_sweep(spec, csv);
      break;
    case Command::Risk:
      cmd_risk(spec, csv);
      break;
  }
  if (to_file) {
    file.close();
    summary << "wrote " << spec.output_path << "\n";
  }
}

std::vector<std::pair<ExperimentSpec, std::string>> figure_presets(const std::string& key) {
  std::vector<std::pair<ExperimentSpec, std::string>> out;
  if (key == "2b") {
    // Gaussian MSE-vs-delta trade-off curves under the quadratic-SNR rule.
    const double levels[] = {0.1, 0.5, 1.0};
    const char* names[] = {"fig2b_sigma0_0.1.csv", "fig2b_sigma0_0.5.csv",
                           "fig2b_sigma0_1.csv"};
    for (int i = 0; i < 3; ++i) {
      ExperimentSpec s;
      s.command = Command::SeCurve;
      s.prior_kind = PriorKind::Gaussian;
      s.sigma_x2 = 1.0;
      s.sigma0_2 = levels[i];
      s.delta_grid = {0.05, 3.0, 60, false};
      out.emplace_back(s, names[i]);
    }
  } else if (key == "3") {
    // Gaussian optimal ratio vs C1 = sigma_x2/sigma0_2 (closed form per row).
    ExperimentSpec s;
    s.command = Command::Design;
    s.prior_kind = PriorKind::Gaussian;
    s.sigma_x2 = 1.0;
    s.design_sweep_sigma0 = true;
    s.sigma0_grid = {1e-4, 1e2, 25, true};
    out.emplace_back(s, "fig3_gaussian_design.csv");
  } else if (key == "4") {
    // Worst-case risk at the optimal threshold vs sparsity, both domains.
    for (auto domain : {Domain::Real, Domain::Complex}) {
      ExperimentSpec s;
      s.command = Command::Risk;
      s.domain = domain;
      s.epsilon_grid = {0.01, 1.0, 100, false};
      out.emplace_back(s, domain == Domain::Real ? std::string("fig4_risk_real.csv")
                                                 : std::string("fig4_risk_complex.csv"));
    }
  } else if (key == "5") {
    // Bernoulli-Gaussian design region over (sigma0_2, epsilon) at sigma_x2=1.
    for (auto domain : {Domain::Real, Domain::Complex}) {
      ExperimentSpec s;
      s.command = Command::RegionSweep;
      s.domain = domain;
      s.sigma_x2 = 1.0;
      s.sigma0_grid = {0.01, 1.0, 20, true};
      s.epsilon_grid = {0.05, 1.0, 20, false};
      out.emplace_back(s, domain == Domain::Real ? std::string("fig5_region_real.csv")
                                                 : std::string("fig5_region_complex.csv"));
    }
  } else if (key == "6") {
    // Empirical-vs-SE MSE curves: BG and LF-surrogate runs at two sparsities.
    struct Cell {
      PriorKind kind;
      double eps;
      const char* name;
    };
    const Cell cells[] = {
        {PriorKind::BernoulliGaussian, 0.1, "fig6_bg_eps0.1.csv"},
        {PriorKind::BernoulliGaussian, 0.05, "fig6_bg_eps0.05.csv"},
        {PriorKind::LeastFavorable, 0.1, "fig6_lf_eps0.1.csv"},
        {PriorKind::LeastFavorable, 0.05, "fig6_lf_eps0.05.csv"},
    };
    for (const auto& c : cells) {
      ExperimentSpec s;
      s.command = Command::MonteCarlo;
      s.prior_kind = c.kind;
      s.epsilon = c.eps;
      s.sigma_x2 = 1.0;
      s.sigma0_2 = 0.01;
      s.n = 1000;
      s.trials = 100;
      s.seed = 1;
      s.delta_grid = {0.2, 1.5, 15, false};
      out.emplace_back(s, c.name);
    }
  } else {
    throw InvalidSpecError("figure: unknown preset '" + key + "' (use 2b, 3, 4, 5, or 6)");
  }
  return out;
}

}  // namespace qsnr::experiments
