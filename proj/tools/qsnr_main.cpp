// Command-line front end: SE curves, measurement-ratio designers, Monte Carlo
// sweeps, (sigma0_2, epsilon) region sweeps, and risk tables, emitted as CSV
// with deterministic formatting. Exit codes: 0 success, 2 invalid
// specification (message names the field), 3 designer bracket failure,
// 4 all trials blew up at some grid point.

#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "qsnr/errors.hpp"
#include "qsnr/experiments.hpp"
#include "qsnr/linalg.hpp"

namespace {

using qsnr::experiments::Command;
using qsnr::experiments::ExperimentSpec;

std::string join_path(const std::string& dir, const std::string& name) {
  if (dir.empty() || dir == ".") return name;
  return dir.back() == '/' ? dir + name : dir + "/" + name;
}

}  // namespace

int main(int argc, char** argv) {
  qsnr::linalg::apply_thread_env();  // QSNR_THREADS overrides the team size

  CLI::App app{
      "qsnr: optimal measurement ratios under a quadratically decreasing SNR\n"
      "(state evolution, AMP/CAMP Monte Carlo, and measurement-rate designers)"};
  app.set_config("--config", "", "key=value file; command-line flags override it");

  ExperimentSpec spec;
  std::string figure, output_dir = ".";

  const std::map<std::string, qsnr::priors::PriorKind> prior_names{
      {"gaussian", qsnr::priors::PriorKind::Gaussian},
      {"bg", qsnr::priors::PriorKind::BernoulliGaussian},
      {"lf", qsnr::priors::PriorKind::LeastFavorable}};
  const std::map<std::string, qsnr::priors::Domain> domain_names{
      {"real", qsnr::priors::Domain::Real}, {"complex", qsnr::priors::Domain::Complex}};
  const std::map<std::string, qsnr::state_evolution::NoiseRule> rule_names{
      {"quadratic", qsnr::state_evolution::NoiseRule::QuadraticSNR},
      {"constant", qsnr::state_evolution::NoiseRule::Constant}};
  const std::map<std::string, qsnr::amp::SigmaEstimator> estimator_names{
      {"residual", qsnr::amp::SigmaEstimator::ResidualNorm},
      {"theoretical", qsnr::amp::SigmaEstimator::TheoreticalSE}};

  app.add_option("--prior", spec.prior_kind, "Signal prior: gaussian, bg, lf")
      ->transform(CLI::CheckedTransformer(prior_names, CLI::ignore_case));
  app.add_option("--domain", spec.domain, "Scalar domain: real, complex")
      ->transform(CLI::CheckedTransformer(domain_names, CLI::ignore_case));
  app.add_option("--epsilon", spec.epsilon, "Sparsity fraction (bg/lf priors)");
  app.add_option("--sigma-x2", spec.sigma_x2, "Nonzero-coefficient variance");
  app.add_option("--mu", spec.mu, "Finite nonzero amplitude of the lf prior");
  app.add_option("--sigma0-2", spec.sigma0_2, "Noise base level sigma0^2");
  app.add_option("--noise-rule", spec.noise_rule,
                 "Noise variance rule: quadratic (sigma_w2 = delta*sigma0_2) or constant")
      ->transform(CLI::CheckedTransformer(rule_names, CLI::ignore_case));

  app.add_option("--delta-min", spec.delta_grid.min, "Measurement-ratio grid start");
  app.add_option("--delta-max", spec.delta_grid.max, "Measurement-ratio grid end");
  app.add_option("--delta-steps", spec.delta_grid.steps, "Measurement-ratio grid points");
  app.add_option("--eps-min", spec.epsilon_grid.min, "Sparsity grid start");
  app.add_option("--eps-max", spec.epsilon_grid.max, "Sparsity grid end");
  app.add_option("--eps-steps", spec.epsilon_grid.steps, "Sparsity grid points");
  app.add_option("--sigma0-min", spec.sigma0_grid.min, "sigma0^2 grid start");
  app.add_option("--sigma0-max", spec.sigma0_grid.max, "sigma0^2 grid end");
  app.add_option("--sigma0-steps", spec.sigma0_grid.steps, "sigma0^2 grid points");
  app.add_flag("--sigma0-log,--sigma0-linear{false}", spec.sigma0_grid.log_scale,
               "Spacing of the sigma0^2 grid (log by default)");

  app.add_option("-n,--n", spec.n, "Signal dimension");
  app.add_option("--trials", spec.trials, "Monte Carlo trials per grid point");
  app.add_option("--seed", spec.seed, "Base seed (trial i uses seed base+i)");
  app.add_option("-o,--output", spec.output_path, "CSV output path (default: stdout)");

  app.add_option("--max-iter", spec.max_iter, "AMP iteration cap");
  app.add_option("--rel-tol", spec.rel_tol, "AMP relative-change stopping tolerance");
  app.add_option("--estimator", spec.estimator,
                 "sigma_e estimator: residual (||r||^2/m) or theoretical (SE schedule)")
      ->transform(CLI::CheckedTransformer(estimator_names, CLI::ignore_case));
  app.add_flag("!--no-onsager", spec.onsager, "Disable the Onsager correction");
  app.add_option("--threshold-alpha", spec.threshold_alpha,
                 "Soft-threshold multiplier override (default: the prior's alpha-dagger)");
  app.add_option("--lf-surrogate-sigma-x2", spec.lf_surrogate_sigma_x2,
                 "Variance of the Bernoulli-Gaussian surrogate used to sample lf signals");
  app.add_flag("--lf-three-point", spec.lf_three_point,
               "Sample lf signals from the three-point law at the finite mu instead");
  app.add_flag("--lf-finite-mu", spec.lf_finite_mu,
               "State evolution uses the finite-mu risk instead of the worst case");
  app.add_flag("--sweep-sigma0", spec.design_sweep_sigma0,
               "design: one row per sigma0^2 grid point (optimal ratio vs C1)");

  app.add_option("--figure", figure,
                 "Write the standard plot bundle (2b, 3, 4, 5, or 6) and exit")
      ->check(CLI::IsMember({"2b", "3", "4", "5", "6"}));
  app.add_option("--output-dir", output_dir, "Directory for --figure outputs");

  std::map<std::string, Command> commands{{"se-curve", Command::SeCurve},
                                          {"design", Command::Design},
                                          {"monte-carlo", Command::MonteCarlo},
                                          {"region-sweep", Command::RegionSweep},
                                          {"risk", Command::Risk}};
  for (const auto& [name, cmd] : commands) {
    const char* desc = "";
    switch (cmd) {
      case Command::SeCurve:
        desc = "State-evolution MSE vs delta (CSV: delta,err_se,converged)";
        break;
      case Command::Design:
        desc = "Optimal measurement ratio for the chosen prior";
        break;
      case Command::MonteCarlo:
        desc = "Empirical AMP MSE vs SE prediction over a delta grid";
        break;
      case Command::RegionSweep:
        desc = "delta_dagger over a (sigma0_2, epsilon) grid (bg prior)";
        break;
      case Command::Risk:
        desc = "Worst-case risk and optimal threshold vs sparsity";
        break;
    }
    app.add_subcommand(name, desc)->fallthrough();
  }
  app.require_subcommand(0, 1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (!figure.empty()) {
      if (!app.get_subcommands().empty())
        throw qsnr::InvalidSpecError("figure: give either --figure or a command, not both");
      for (auto& [preset, name] : qsnr::experiments::figure_presets(figure)) {
        preset.output_path = join_path(output_dir, name);
        qsnr::experiments::run_command(preset, std::cout);
      }
      return 0;
    }
    const auto subs = app.get_subcommands();
    if (subs.empty()) {
      std::cout << app.help();
      return 2;
    }
    spec.command = commands.at(subs.front()->get_name());
    qsnr::experiments::run_command(spec, std::cout);
    return 0;
  } catch (const qsnr::InvalidSpecError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const qsnr::NoBracketError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const qsnr::AllTrialsFailedError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
