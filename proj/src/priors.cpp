#include "qsnr/priors.hpp"

#include <cmath>
#include <string>

#include "qsnr/numerics.hpp"
#include "qsnr/rng.hpp"

namespace qsnr::priors {

namespace {

void check_epsilon(double epsilon) {
  if (!(epsilon > 0.0 && epsilon <= 1.0))
    throw InvalidSpecError("prior: epsilon must satisfy 0 < epsilon <= 1, got " +
                           std::to_string(epsilon));
}

void check_positive(double v, const char* field) {
  if (!(v > 0.0) || !std::isfinite(v))
    throw InvalidSpecError(std::string("prior: ") + field + " must be > 0, got " +
                           std::to_string(v));
}

}  // namespace

Prior Prior::gaussian(double sigma_x2, Domain domain) {
  check_positive(sigma_x2, "sigma_x2");
  Prior p;
  p.kind = PriorKind::Gaussian;
  p.domain = domain;
  p.epsilon = 1.0;
  p.sigma_x2 = sigma_x2;
  return p;
}

Prior Prior::bernoulli_gaussian(double epsilon, double sigma_x2, Domain domain) {
  check_epsilon(epsilon);
  check_positive(sigma_x2, "sigma_x2");
  Prior p;
  p.kind = PriorKind::BernoulliGaussian;
  p.domain = domain;
  p.epsilon = epsilon;
  p.sigma_x2 = sigma_x2;
  return p;
}

Prior Prior::least_favorable(double epsilon, double mu, Domain domain) {
  check_epsilon(epsilon);
  check_positive(mu, "mu");
  Prior p;
  p.kind = PriorKind::LeastFavorable;
  p.domain = domain;
  p.epsilon = epsilon;
  p.mu = mu;
  return p;
}

double second_moment(const Prior& p) {
  switch (p.kind) {
    case PriorKind::Gaussian:
      return p.sigma_x2;
    case PriorKind::BernoulliGaussian:
      return p.epsilon * p.sigma_x2;
    case PriorKind::LeastFavorable:
      return p.epsilon * p.mu * p.mu;
  }
  return 0.0;  // unreachable
}

// Per-element word layout (part of the qsnr-rng-v1 contract): element j owns
// words [4j, 4j+4) -- 4j support, (4j+1, 4j+2) Box-Muller pair, 4j+3
// sign/phase. Kinds that need fewer words leave the rest unread.

std::vector<double> sample_real(const Prior& p, std::size_t n, std::uint64_t seed) {
  rng::Stream s(seed);
  std::vector<double> x(n, 0.0);
  switch (p.kind) {
    case PriorKind::Gaussian: {
      const double sd = std::sqrt(p.sigma_x2);
      for (std::size_t j = 0; j < n; ++j)
        x[j] = sd * s.normal_from_words(4 * j + 1, 4 * j + 2).first;
      break;
    }
    case PriorKind::BernoulliGaussian: {
      const double sd = std::sqrt(p.sigma_x2);
      for (std::size_t j = 0; j < n; ++j) {
        if (s.uniform(4 * j) < p.epsilon)
          x[j] = sd * s.normal_from_words(4 * j + 1, 4 * j + 2).first;
      }
      break;
    }
    case PriorKind::LeastFavorable: {
      for (std::size_t j = 0; j < n; ++j) {
        if (s.uniform(4 * j) < p.epsilon)
          x[j] = (s.uniform(4 * j + 3) < 0.5) ? -p.mu : p.mu;
      }
      break;
    }
  }
  return x;
}

std::vector<std::complex<double>> sample_complex(const Prior& p, std::size_t n,
                                                 std::uint64_t seed) {
  rng::Stream s(seed);
  std::vector<std::complex<double>> x(n, {0.0, 0.0});
  switch (p.kind) {
    case PriorKind::Gaussian: {
      const double sd = std::sqrt(0.5 * p.sigma_x2);  // per-part variance s/2
      for (std::size_t j = 0; j < n; ++j) {
        const auto [re, im] = s.normal_from_words(4 * j + 1, 4 * j + 2);
        x[j] = {sd * re, sd * im};
      }
      break;
    }
    case PriorKind::BernoulliGaussian: {
      const double sd = std::sqrt(0.5 * p.sigma_x2);
      for (std::size_t j = 0; j < n; ++j) {
        if (s.uniform(4 * j) < p.epsilon) {
          const auto [re, im] = s.normal_from_words(4 * j + 1, 4 * j + 2);
          x[j] = {sd * re, sd * im};
        }
      }
      break;
    }
    case PriorKind::LeastFavorable: {
      for (std::size_t j = 0; j < n; ++j) {
        if (s.uniform(4 * j) < p.epsilon) {
          const double theta = 2.0 * numerics::kPi * s.uniform(4 * j + 3);
          x[j] = {p.mu * std::cos(theta), p.mu * std::sin(theta)};
        }
      }
      break;
    }
  }
  return x;
}

}  // namespace qsnr::priors
