#pragma once

// Experiment descriptions and the CSV-emitting commands behind the CLI:
// SE curves, designer summaries, Monte Carlo sweeps, (sigma0_2, epsilon)
// region sweeps, and risk tables. All writers render numbers at 12 significant
// digits and booleans as 1/0, deterministically byte-for-byte, which is what
// makes rerun-identity testable.

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "qsnr/amp.hpp"
#include "qsnr/priors.hpp"
#include "qsnr/state_evolution.hpp"

namespace qsnr::experiments {

using priors::Domain;
using priors::PriorKind;

enum class Command { SeCurve, Design, MonteCarlo, RegionSweep, Risk };

// Inclusive endpoint grid; log spacing interpolates in log(min..max).
struct GridSpec {
  double min = 0.2;
  double max = 1.5;
  int steps = 15;
  bool log_scale = false;

  std::vector<double> points() const;
};

struct ExperimentSpec {
  Command command = Command::SeCurve;

  PriorKind prior_kind = PriorKind::BernoulliGaussian;
  Domain domain = Domain::Real;
  double epsilon = 0.1;
  double sigma_x2 = 1.0;
  double mu = 10.0;

  double sigma0_2 = 0.01;
  state_evolution::NoiseRule noise_rule = state_evolution::NoiseRule::QuadraticSNR;

  GridSpec delta_grid{0.2, 1.5, 15, false};    // SeCurve / MonteCarlo
  GridSpec epsilon_grid{0.01, 1.0, 100, false};  // Risk / RegionSweep
  GridSpec sigma0_grid{0.01, 1.0, 20, true};   // RegionSweep

  std::size_t n = 1000;
  std::size_t trials = 100;
  std::uint64_t seed = 1;
  std::string output_path;  // empty = stdout

  // Design only: emit one row per sigma0_grid point instead of the single
  // spec.sigma0_2 row (the optimal-ratio-vs-C1 sweep).
  bool design_sweep_sigma0 = false;

  // Monte Carlo knobs (defaults match the desk-scale reproduction protocol).
  std::size_t max_iter = 2000;
  double rel_tol = 1e-8;
  amp::SigmaEstimator estimator = amp::SigmaEstimator::ResidualNorm;
  bool onsager = true;
  // Soft-threshold multiplier override (NaN = the prior's alpha-dagger).
  double threshold_alpha = std::numeric_limits<double>::quiet_NaN();
  double lf_surrogate_sigma_x2 = 100.0;
  bool lf_three_point = false;
  bool lf_finite_mu = false;  // SE side: risk at the prior's finite mu
};

// Throws InvalidSpecError naming the offending field.
void validate(const ExperimentSpec& spec);

// The prior described by `spec` (validated through the factory checks).
priors::Prior make_prior(const ExperimentSpec& spec);
state_evolution::NoiseModel make_noise(const ExperimentSpec& spec);

// Number formatting shared by every writer: 12 significant digits ("%.12g"),
// infinities as "inf"/"-inf", NaN as "nan".
std::string fmt_g(double v);

// Rows `delta,err_se,converged`; divergent deltas get err_se = inf and 0.
void cmd_se_curve(const ExperimentSpec& spec, std::ostream& csv);

// Row `prior,domain,epsilon,sigma_x2,sigma0_2,delta_dagger,err_min,under_one,under_two`
// plus a short human-readable summary on the second stream. NoBracketError
// propagates (the CLI maps it to exit code 3).
void cmd_design(const ExperimentSpec& spec, std::ostream& csv, std::ostream& summary);

// Rows `delta,err_se,err_empirical,stderr,fail_count`. After writing every
// row, throws AllTrialsFailedError if some grid point lost all its trials to
// blowups (the CLI maps it to exit code 4).
void cmd_monte_carlo(const ExperimentSpec& spec, std::ostream& csv);

// Rows `sigma0_2,epsilon,delta_dagger,under_one`; failed cells leave the two
// result fields empty.
void cmd_region_sweep(const ExperimentSpec& spec, std::ostream& csv);

// Rows `epsilon,alpha_dagger,m_value` over the epsilon grid in spec.domain.
void cmd_risk(const ExperimentSpec& spec, std::ostream& csv);

// Dispatches on spec.command, writing the CSV to spec.output_path (stdout if
// empty) and summaries to the given stream.
void run_command(const ExperimentSpec& spec, std::ostream& summary);

// Ready-made parameterizations of the library's standard plots, keyed
// "2b", "3", "4", "5", "6"; each entry is (spec, output filename). Unknown
// keys throw InvalidSpecError.
std::vector<std::pair<ExperimentSpec, std::string>> figure_presets(const std::string& key);

}  // namespace qsnr::experiments
