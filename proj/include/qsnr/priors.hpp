#pragma once

// The three signal distributions (Gaussian, Bernoulli-Gaussian, least
// favorable) over the real or complex domain, their second moments, and
// deterministic sampling.

#include <complex>
#include <cstdint>
#include <vector>

#include "qsnr/errors.hpp"

namespace qsnr::priors {

enum class Domain { Real, Complex };

enum class PriorKind { Gaussian, BernoulliGaussian, LeastFavorable };

// Signal distribution. Parameter roles by kind:
//   Gaussian:          N(0, sigma_x2)                  (epsilon fixed at 1)
//   BernoulliGaussian: zero w.p. 1-epsilon, else N(0, sigma_x2)
//   LeastFavorable:    zero w.p. 1-epsilon, else +-mu (real) or mu*e^{i phase}
//                      (complex); mu is a finite surrogate for the mu->inf
//                      worst-case analysis.
// Complex variances count both parts: a complex Gaussian of variance s has
// i.i.d. real/imaginary parts of variance s/2 each.
struct Prior {
  PriorKind kind = PriorKind::Gaussian;
  Domain domain = Domain::Real;
  double epsilon = 1.0;
  double sigma_x2 = 1.0;
  double mu = 10.0;

  static Prior gaussian(double sigma_x2, Domain domain = Domain::Real);
  static Prior bernoulli_gaussian(double epsilon, double sigma_x2, Domain domain = Domain::Real);
  static Prior least_favorable(double epsilon, double mu = 10.0, Domain domain = Domain::Real);
};

// E[X^2] (complex: E|X|^2). Gaussian -> sigma_x2; BG -> epsilon*sigma_x2;
// LF -> epsilon*mu^2. Used as the state-evolution initial condition
// (sigma_e0)^2 = E[X^2]/delta + sigma_w^2.
double second_moment(const Prior& p);

// Draw n i.i.d. entries; pure in (p, n, seed). Element j consumes the fixed
// word range [4j, 4j+4) of the stream, so any element can be regenerated
// independently: word 4j decides the support, words 4j+1..2 feed the
// Box-Muller pair, word 4j+3 gives the sign (real LF) or phase (complex LF).
std::vector<double> sample_real(const Prior& p, std::size_t n, std::uint64_t seed);
std::vector<std::complex<double>> sample_complex(const Prior& p, std::size_t n,
                                                 std::uint64_t seed);

template <class Scalar>
std::vector<Scalar> sample(const Prior& p, std::size_t n, std::uint64_t seed);

template <>
inline std::vector<double> sample<double>(const Prior& p, std::size_t n, std::uint64_t seed) {
  return sample_real(p, n, seed);
}
template <>
inline std::vector<std::complex<double>> sample<std::complex<double>>(const Prior& p,
                                                                      std::size_t n,
                                                                      std::uint64_t seed) {
  return sample_complex(p, n, seed);
}

}  // namespace qsnr::priors
