#include "qsnr/rng.hpp"

#include <cmath>

namespace qsnr::rng {

std::pair<double, double> Stream::normal_from_words(std::uint64_t w1, std::uint64_t w2) const {
  const double u1 = uniform_pos(w1);
  const double u2 = uniform(w2);
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * 3.14159265358979323846264338327950288 * u2;
  return {r * std::cos(theta), r * std::sin(theta)};
}

}  // namespace qsnr::rng
