#include "qsnr/numerics.hpp"

#include <cmath>

namespace qsnr::numerics {

namespace {
// 1/golden ratio: the interior-point placement factor of golden-section search.
constexpr double kInvPhi = 0.61803398874989484820458683436563812;
}  // namespace

std::pair<double, double> golden_minimize(double (*f)(double, const void*), const void* ctx,
                                          double lo, double hi, double tol) {
  if (!(lo < hi)) throw BadBracketError("golden_minimize: requires lo < hi");
  double a = lo, b = hi;
  double x1 = b - kInvPhi * (b - a);
  double x2 = a + kInvPhi * (b - a);
  double f1 = f(x1, ctx);
  double f2 = f(x2, ctx);
  while (b - a > tol) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kInvPhi * (b - a);
      f1 = f(x1, ctx);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kInvPhi * (b - a);
      f2 = f(x2, ctx);
    }
  }
  const double xm = 0.5 * (a + b);
  return {xm, f(xm, ctx)};
}

double bisect_root(double (*f)(double, const void*), const void* ctx, double lo, double hi,
                   double tol) {
  double flo = f(lo, ctx);
  double fhi = f(hi, ctx);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0.0) == (fhi > 0.0))
    throw NoSignChangeError("bisect_root: f(lo) and f(hi) have the same sign");
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;  // bracket at floating-point resolution
    const double fm = f(mid, ctx);
    if (fm == 0.0) return mid;
    if ((fm > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace qsnr::numerics
