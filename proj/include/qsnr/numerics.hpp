#pragma once

// Scalar special functions and generic 1-D numerical routines used by every
// other module: standard-normal pdf/cdf, composite Gauss-Legendre quadrature,
// golden-section minimization, and bisection root finding.

#include <cmath>
#include <cstddef>
#include <utility>

#include "qsnr/errors.hpp"

namespace qsnr::numerics {

inline constexpr double kPi = 3.14159265358979323846264338327950288;
inline constexpr double kSqrt2 = 1.41421356237309504880168872420969808;
inline constexpr double kInvSqrt2Pi = 0.39894228040143267793994605993438187;

// phi(x) = exp(-x^2/2) / sqrt(2*pi)
inline double std_normal_pdf(double x) { return kInvSqrt2Pi * std::exp(-0.5 * x * x); }

// Phi(x), accurate to ~1e-16 absolute via the complementary error function;
// erfc handles the far tails without cancellation.
inline double std_normal_cdf(double x) { return 0.5 * std::erfc(-x / kSqrt2); }

// Controls integrate_1d. The defaults resolve Gaussian-decay integrands on a
// +-12 sigma window to well below 1e-10 absolute error.
struct QuadratureSpec {
  double truncation_radius = 12.0;  // integration window half-width, in sigmas
  int panels = 2048;                // number of equal panels over [lo, hi]
  double abs_tol = 1e-10;           // target absolute error of the estimate
};

namespace detail {

// 10-point Gauss-Legendre nodes/weights on [-1, 1] (positive half; mirrored).
inline constexpr double kGlNode[5] = {
    0.14887433898163121088482601, 0.43339539412924719079926594,
    0.67940956829902440623432736, 0.86506336668898451073209668,
    0.97390652851717172007796401};
inline constexpr double kGlWeight[5] = {
    0.29552422471475287017389299, 0.26926671930999635509122692,
    0.21908636251598204399553493, 0.14945134915058059314577633,
    0.06667134430868813759356880};

template <class F>
double gl_composite(F&& f, double lo, double hi, int panels) {
  const double h = (hi - lo) / panels;
  double total = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double c = lo + (p + 0.5) * h;  // panel midpoint
    const double r = 0.5 * h;             // panel half-width
    double acc = 0.0;
    for (int k = 0; k < 5; ++k) {
      const double dx = r * kGlNode[k];
      acc += kGlWeight[k] * (f(c - dx) + f(c + dx));
    }
    total += r * acc;
  }
  return total;
}

}  // namespace detail

// Composite 10-point Gauss-Legendre quadrature of f over [lo, hi]. The error
// estimate compares against a half-resolution pass; if it misses spec.abs_tol
// the panel count is doubled (a few times) before giving up and returning the
// finest result. Deterministic for a fixed spec.
// Throws NonFiniteError if f evaluates to NaN/Inf anywhere on the grid.
template <class F>
double integrate_1d(F&& f, double lo, double hi, const QuadratureSpec& spec = {}) {
  auto checked = [&f](double x) {
    const double v = f(x);
    if (!std::isfinite(v)) throw NonFiniteError("integrate_1d: integrand is not finite");
    return v;
  };
  int panels = spec.panels < 2 ? 2 : spec.panels;
  double fine = detail::gl_composite(checked, lo, hi, panels);
  for (int round = 0; round < 4; ++round) {
    const double coarse = detail::gl_composite(checked, lo, hi, panels / 2);
    if (std::abs(fine - coarse) <= spec.abs_tol) break;
    panels *= 2;
    fine = detail::gl_composite(checked, lo, hi, panels);
  }
  return fine;
}

// Golden-section search for the minimizer of a unimodal f on [lo, hi].
// Returns (argmin, f(argmin)) with |argmin - true minimizer| <= tol.
// Throws BadBracketError if lo >= hi.
std::pair<double, double> golden_minimize(double (*f)(double, const void*), const void* ctx,
                                          double lo, double hi, double tol);

template <class F>
std::pair<double, double> golden_minimize(F&& f, double lo, double hi, double tol = 1e-10) {
  auto thunk = [](double x, const void* c) -> double {
    return (*static_cast<const std::remove_reference_t<F>*>(c))(x);
  };
  return golden_minimize(+thunk, &f, lo, hi, tol);
}

// Bisection root of f on [lo, hi]; requires a sign change (endpoints that are
// exactly zero are returned directly). Shrinks the bracket to width <= tol and
// returns its midpoint. Throws NoSignChangeError if f(lo)*f(hi) > 0.
double bisect_root(double (*f)(double, const void*), const void* ctx, double lo, double hi,
                   double tol);

template <class F>
double bisect_root(F&& f, double lo, double hi, double tol = 1e-13) {
  auto thunk = [](double x, const void* c) -> double {
    return (*static_cast<const std::remove_reference_t<F>*>(c))(x);
  };
  return bisect_root(+thunk, &f, lo, hi, tol);
}

}  // namespace qsnr::numerics
