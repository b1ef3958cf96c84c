#include "qsnr/designer.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "qsnr/numerics.hpp"
#include "qsnr/risk.hpp"

namespace qsnr::designer {

namespace {

void check_positive(double v, const char* fn, const char* field) {
  if (!(v > 0.0) || !std::isfinite(v))
    throw InvalidSpecError(std::string(fn) + ": " + field + " must be > 0");
}

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

}  // namespace

DesignResult design_gaussian(double sigma_x2, double sigma0_2) {
  check_positive(sigma_x2, "design_gaussian", "sigma_x2");
  check_positive(sigma0_2, "design_gaussian", "sigma0_2");
  const double c1 = sigma_x2 / sigma0_2;
  DesignResult r;
  r.method = DesignMethod::ClosedFormGaussian;
  r.delta_dagger = 0.25 * (std::sqrt(c1 * c1 + 16.0 * c1) - c1);
  // At the optimum the fixed-point relation delta = sigma_e_inf2/(2 sigma0_2)
  // pins the equivalent noise and the achieved MSE.
  r.sigma_e_inf2 = 2.0 * r.delta_dagger * sigma0_2;
  r.err_min = r.delta_dagger * (r.sigma_e_inf2 - r.delta_dagger * sigma0_2);
  r.under_one = c1 < 2.0;
  r.under_two = true;
  r.alpha_dagger = kNaN;
  r.m_value = kNaN;
  return r;
}

DesignResult design_lf(double epsilon, Domain domain, double sigma0_2) {
  check_positive(sigma0_2, "design_lf", "sigma0_2");
  const auto [alpha_dagger, m_value] = risk::optimal_alpha(epsilon, domain);
  DesignResult r;
  r.method = DesignMethod::ClosedFormLF;
  r.alpha_dagger = alpha_dagger;
  r.m_value = m_value;
  r.delta_dagger = 2.0 * m_value;
  // Fixed point at delta = 2M: sigma_e_inf2 = delta^2 sigma0_2/(delta - M) = 4 M sigma0_2.
  r.sigma_e_inf2 = 4.0 * m_value * sigma0_2;
  r.err_min = 2.0 * m_value * r.delta_dagger * sigma0_2;
  r.under_one = m_value < 0.5;
  r.under_two = r.delta_dagger < 2.0;  // strict: epsilon = 1 sits exactly at 2
  return r;
}

DesignResult design_bg(double epsilon, double sigma_x2, double sigma0_2, Domain domain) {
  check_positive(sigma_x2, "design_bg", "sigma_x2");
  check_positive(sigma0_2, "design_bg", "sigma0_2");
  if (!(epsilon > 0.0 && epsilon <= 1.0))
    throw InvalidSpecError("design_bg: epsilon must satisfy 0 < epsilon <= 1");

  // Critical condition at the optimum: (sigma_e_inf2)^2 = 4 sigma0_2 Err_inf.
  auto h = [&](double s) {
    return s * s - 4.0 * sigma0_2 * risk::err_bg(epsilon, sigma_x2, s, domain);
  };

  // h < 0 near s = 0 (noise-dominated) and > 0 for large s (s^2 dominates the
  // bounded MMSE), so a log grid over [1e-6, 1e3] * sigma_x2 brackets the root.
  constexpr int kScanPoints = 200;
  const double lo_exp = std::log10(sigma_x2) - 6.0;
  const double hi_exp = std::log10(sigma_x2) + 3.0;
  double prev_s = std::pow(10.0, lo_exp);
  double prev_h = h(prev_s);
  int sign_changes = 0;
  double bracket_lo = 0.0, bracket_hi = 0.0;
  for (int i = 1; i < kScanPoints; ++i) {
    const double s = std::pow(10.0, lo_exp + (hi_exp - lo_exp) * i / (kScanPoints - 1));
    const double hs = h(s);
    if ((prev_h < 0.0 && hs >= 0.0) || (prev_h >= 0.0 && hs < 0.0)) {
      if (++sign_changes == 1) {  // keep the first (smallest-s) bracket
        bracket_lo = prev_s;
        bracket_hi = s;
      }
    }
    prev_s = s;
    prev_h = hs;
  }
  if (sign_changes == 0)
    throw NoBracketError(
        "design_bg: no sign change of the critical function on the scan grid "
        "(epsilon=" + std::to_string(epsilon) + ", sigma_x2=" + std::to_string(sigma_x2) +
        ", sigma0_2=" + std::to_string(sigma0_2) + "; h(" + std::to_string(prev_s) +
        ")=" + std::to_string(prev_h) + ")");

  const double s_star =
      numerics::bisect_root(h, bracket_lo, bracket_hi, 1e-15 * std::max(1.0, bracket_hi));

  DesignResult r;
  r.method = DesignMethod::BisectionBG;
  r.sign_changes = sign_changes;
  r.sigma_e_inf2 = s_star;
  r.delta_dagger = s_star / (2.0 * sigma0_2);
  r.err_min = risk::err_bg(epsilon, sigma_x2, s_star, domain);
  // delta < 1 criterion: sigma_x2 < sigma0_2 / (epsilon (1 - R I(R, epsilon)))
  // evaluated at the solution.
  const double R = sigma_x2 / (s_star + sigma_x2);
  const double I = domain == Domain::Real ? risk::i_integral(R, epsilon)
                                          : risk::i_integral_complex(R, epsilon);
  r.under_one = sigma_x2 < sigma0_2 / (epsilon * (1.0 - R * I));
  r.under_two = r.delta_dagger < 2.0;
  r.alpha_dagger = kNaN;
  r.m_value = kNaN;
  return r;
}

std::vector<RegionCell> region_sweep_bg(double sigma_x2, const std::vector<double>& sigma0_grid,
                                        const std::vector<double>& epsilon_grid, Domain domain) {
  if (sigma0_grid.empty() || epsilon_grid.empty())
    throw InvalidSpecError("region_sweep_bg: grids must be non-empty");
  std::vector<RegionCell> cells(sigma0_grid.size() * epsilon_grid.size());
  // Cells are independent designer calls; the flat index keeps the output
  // order fixed no matter how the loop is scheduled.
#pragma omp parallel for schedule(dynamic)
  for (std::size_t idx = 0; idx < cells.size(); ++idx) {
    const double s0 = sigma0_grid[idx / epsilon_grid.size()];
    const double eps = epsilon_grid[idx % epsilon_grid.size()];
    RegionCell& cell = cells[idx];
    cell.sigma0_2 = s0;
    cell.epsilon = eps;
    try {
      cell.result = design_bg(eps, sigma_x2, s0, domain);
    } catch (const Error& e) {
      cell.error = e.what();
    }
  }
  return cells;
}

}  // namespace qsnr::designer
