#include "qsnr/risk.hpp"

#include <cmath>
#include <cstdint>
#include <unordered_map>
#include <utility>

#include "qsnr/numerics.hpp"

namespace qsnr::risk {

using numerics::std_normal_cdf;
using numerics::std_normal_pdf;

double m_finite_mu(const RiskParams& p) {
  if (p.domain != Domain::Real)
    throw InvalidSpecError("m_finite_mu: defined for the real domain only");
  const double a = p.alpha;
  const double nu = p.mu / p.sigma_e;  // amplitude in noise units
  const double eps = p.epsilon;
  const double a2p1 = a * a + 1.0;
  return eps * a2p1 * std_normal_cdf(-a + nu) - eps * (a + nu) * std_normal_pdf(a - nu) +
         eps * nu * nu * (std_normal_cdf(a - nu) - std_normal_cdf(-a - nu)) +
         eps * a2p1 * std_normal_cdf(-a - nu) - eps * (a - nu) * std_normal_pdf(-a - nu) +
         (1.0 - eps) * (2.0 * a2p1 * std_normal_cdf(-a) - 2.0 * a * std_normal_pdf(a));
}

double m_worst_case(double epsilon, double alpha) {
  const double a2p1 = alpha * alpha + 1.0;
  return epsilon * a2p1 +
         (1.0 - epsilon) *
             (2.0 * a2p1 * std_normal_cdf(-alpha) - 2.0 * alpha * std_normal_pdf(alpha));
}

double m_worst_case_complex(double epsilon, double alpha) {
  const double a2p1 = alpha * alpha + 1.0;
  const double sqrt2a = numerics::kSqrt2 * alpha;
  const double sqrt_pi = std::sqrt(numerics::kPi);
  return epsilon * a2p1 +
         (1.0 - epsilon) * (std::sqrt(2.0 * numerics::kPi) * std_normal_pdf(sqrt2a) -
                            2.0 * alpha * sqrt_pi * std_normal_cdf(-sqrt2a));
}

AlphaResult optimal_alpha(double epsilon, Domain domain) {
  if (!(epsilon > 0.0 && epsilon <= 1.0))
    throw InvalidSpecError("optimal_alpha: epsilon must satisfy 0 < epsilon <= 1");
  auto objective = [&](double a) {
    return domain == Domain::Real ? m_worst_case(epsilon, a) : m_worst_case_complex(epsilon, a);
  };
  // M grows like alpha^2, so the minimizer always sits far inside [0, 10].
  const auto [argmin, value] = numerics::golden_minimize(objective, 0.0, 10.0, 1e-10);
  return {argmin, value};
}

namespace {

// Memo key: (R, epsilon) rounded to 1e-12, good for the fixed-point loops that
// re-request the tail of a converging sequence of R values.
struct IKey {
  std::int64_t r, e;
  bool operator==(const IKey& o) const { return r == o.r && e == o.e; }
};
struct IKeyHash {
  std::size_t operator()(const IKey& k) const {
    return std::hash<std::int64_t>()(k.r * 0x9E3779B97F4A7C15ll + k.e);
  }
};

IKey make_key(double R, double epsilon) {
  return {static_cast<std::int64_t>(std::llround(R * 1e12)),
          static_cast<std::int64_t>(std::llround(epsilon * 1e12))};
}

void check_i_args(double R, double epsilon, const char* fn) {
  if (!(R > 0.0 && R < 1.0))
    throw InvalidSpecError(std::string(fn) + ": R must satisfy 0 < R < 1");
  if (!(epsilon > 0.0 && epsilon <= 1.0))
    throw InvalidSpecError(std::string(fn) + ": epsilon must satisfy 0 < epsilon <= 1");
}

}  // namespace

double i_integral(double R, double epsilon) {
  check_i_args(R, epsilon, "i_integral");
  if (epsilon >= 1.0) return 1.0;  // denominator collapses to 1
  thread_local std::unordered_map<IKey, double, IKeyHash> cache;
  const IKey key = make_key(R, epsilon);
  if (auto it = cache.find(key); it != cache.end()) return it->second;

  // Weight in the denominator: (1-eps)/(eps sqrt(1-R)) e^{-q x^2/2}, q = R/(1-R).
  const double log_c = std::log1p(-epsilon) - std::log(epsilon) - 0.5 * std::log1p(-R);
  const double q = R / (1.0 - R);
  const numerics::QuadratureSpec spec;
  const double value = numerics::integrate_1d(
      [&](double x) {
        const double x2 = x * x;
        return std_normal_pdf(x) * x2 / (1.0 + std::exp(log_c - 0.5 * q * x2));
      },
      -spec.truncation_radius, spec.truncation_radius, spec);
  cache.emplace(key, value);
  return value;
}

double i_integral_complex(double R, double epsilon) {
  check_i_args(R, epsilon, "i_integral_complex");
  if (epsilon >= 1.0) return 1.0;
  thread_local std::unordered_map<IKey, double, IKeyHash> cache;
  const IKey key = make_key(R, epsilon);
  if (auto it = cache.find(key); it != cache.end()) return it->second;

  // Radial reduction of the isotropic 2-D integral: with density
  // (1/pi) e^{-r^2} r^2 over the plane, the angular part integrates to 2 pi.
  const double log_c = std::log1p(-epsilon) - std::log(epsilon) - std::log1p(-R);
  const double q = R / (1.0 - R);
  const numerics::QuadratureSpec spec;
  const double value = numerics::integrate_1d(
      [&](double r) {
        const double r2 = r * r;
        return 2.0 * r2 * r * std::exp(-r2) / (1.0 + std::exp(log_c - q * r2));
      },
      0.0, spec.truncation_radius, spec);
  cache.emplace(key, value);
  return value;
}

double err_lf(double epsilon, double alpha_dagger, double sigma_e2, Domain domain) {
  const double m = domain == Domain::Real ? m_worst_case(epsilon, alpha_dagger)
                                          : m_worst_case_complex(epsilon, alpha_dagger);
  return m * sigma_e2;
}

double err_bg(double epsilon, double sigma_x2, double sigma_e2, Domain domain) {
  const double R = sigma_x2 / (sigma_e2 + sigma_x2);
  const double I =
      domain == Domain::Real ? i_integral(R, epsilon) : i_integral_complex(R, epsilon);
  // Equivalent to [R eps/(1-R)] (1 - R I) sigma_e2, but free of the 1/(1-R)
  // blow-up as sigma_e2 -> 0.
  return epsilon * sigma_x2 * (1.0 - R * I);
}

double err_bg_empirical(const std::vector<double>& beta, const denoisers::DenoiserState& s) {
  if (beta.empty()) throw InvalidSpecError("err_bg_empirical: beta must be non-empty");
  double acc = 0.0;
  for (double b : beta) acc += denoisers::bg_eta_real_deriv(b, s);
  return acc / static_cast<double>(beta.size()) * s.sigma_e2;
}

double err_bg_empirical(const std::vector<std::complex<double>>& beta,
                        const denoisers::DenoiserState& s) {
  if (beta.empty()) throw InvalidSpecError("err_bg_empirical: beta must be non-empty");
  double acc = 0.0;
  for (const auto& b : beta) acc += denoisers::bg_eta_complex_partials(b, s).dRR;
  return acc / static_cast<double>(beta.size()) * s.sigma_e2;
}

}  // namespace qsnr::risk
