#pragma once

// Optimal measurement-ratio computation: closed forms for the Gaussian and
// least-favorable priors, bisection on the critical condition for the
// Bernoulli-Gaussian prior, and the (sigma0_2, epsilon) region sweep.

#include <optional>
#include <string>
#include <vector>

#include "qsnr/priors.hpp"

namespace qsnr::designer {

using priors::Domain;

enum class DesignMethod { ClosedFormGaussian, ClosedFormLF, BisectionBG };

struct DesignResult {
  double delta_dagger = 0.0;   // MSE-optimal measurement ratio
  double sigma_e_inf2 = 0.0;   // equivalent-noise variance at the optimum
  double err_min = 0.0;        // minimum achievable MSE
  DesignMethod method = DesignMethod::ClosedFormGaussian;
  bool under_one = false;      // delta_dagger < 1 by the prior's criterion
  bool under_two = false;      // delta_dagger < 2 (strict)
  // Least-favorable extras (NaN otherwise).
  double alpha_dagger = 0.0;
  double m_value = 0.0;
  // Bernoulli-Gaussian diagnostic: sign changes seen on the bracket scan (the
  // root is provably unique only at epsilon = 1, so extras are reported).
  int sign_changes = 0;
};

// delta_dagger = (sqrt(C1^2 + 16 C1) - C1)/4 with C1 = sigma_x2/sigma0_2;
// under_one iff C1 < 2, under_two always.
DesignResult design_gaussian(double sigma_x2, double sigma0_2);

// delta_dagger = 2 M(epsilon, alpha_dagger); independent of sigma0_2, which
// only scales err_min = 2 M delta_dagger sigma0_2 (hence the defaulted
// parameter; callers typically pass just epsilon and domain).
DesignResult design_lf(double epsilon, Domain domain, double sigma0_2 = 1.0);

// Root of h(s) = s^2 - 4 sigma0_2 * err_bg(epsilon, sigma_x2, s) over a
// logarithmic s-grid (1e-6*sigma_x2 .. 1e3*sigma_x2, 200 points), refined by
// bisection; delta_dagger = s*/(2 sigma0_2). under_one iff the solution
// satisfies sigma_x2 < sigma0_2 / (epsilon (1 - R I(R, epsilon))).
// Throws NoBracketError (with scan diagnostics) if no sign change is found.
DesignResult design_bg(double epsilon, double sigma_x2, double sigma0_2, Domain domain);

struct RegionCell {
  double sigma0_2 = 0.0;
  double epsilon = 0.0;
  std::optional<DesignResult> result;  // empty if the cell's designer failed
  std::string error;                   // failure reason when result is empty
};

// design_bg over the grid; per-cell failures are recorded, not propagated.
// Cells are ordered sigma0_grid-major, epsilon-minor.
std::vector<RegionCell> region_sweep_bg(double sigma_x2, const std::vector<double>& sigma0_grid,
                                        const std::vector<double>& epsilon_grid, Domain domain);

}  // namespace qsnr::designer
