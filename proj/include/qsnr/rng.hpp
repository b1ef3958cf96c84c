#pragma once

// Counter-based random number generation ("qsnr-rng-v1").
//
// Every random quantity is a pure function of (seed, index): the i-th 64-bit
// word of a stream is  mix(seed + (i+1)*GAMMA)  where mix is the split-mix
// finalizer (xor-shift-multiply, three rounds). This gives O(1) random access,
// trivially parallel generation, and bit-exact reproducibility from any
// language that can do 64-bit wrapping arithmetic. The full recipe is spelled
// out in the README so streams can be regenerated outside this codebase.
//
// Derived streams: substream(seed, tag) = mix(seed + tag*STREAM_SALT) gives
// statistically independent child seeds for signal/matrix/noise draws.
//
// Reals: uniform(i) maps the top 53 bits to [0,1); uniform_pos(i) to (0,1]
// (safe under log); normal_pair(i) applies Box-Muller to words (2i, 2i+1).

#include <cstdint>
#include <utility>

namespace qsnr::rng {

inline constexpr const char* kSchemeName = "qsnr-rng-v1";

inline constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ull;
inline constexpr std::uint64_t kStreamSalt = 0xD1B54A32D192ED03ull;

// Split-mix 64-bit finalizer.
inline std::uint64_t mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// The i-th raw word of the stream with the given seed.
inline std::uint64_t word(std::uint64_t seed, std::uint64_t index) {
  return mix(seed + (index + 1) * kGamma);
}

// Child seed for an independent named substream.
inline std::uint64_t substream(std::uint64_t seed, std::uint64_t tag) {
  return mix(seed + tag * kStreamSalt);
}

// Fixed substream tags used by instance assembly (part of the v1 contract).
inline constexpr std::uint64_t kTagSignal = 1;
inline constexpr std::uint64_t kTagMatrix = 2;
inline constexpr std::uint64_t kTagNoise = 3;

// Stateless view of one stream; all accessors are pure in (seed, index).
class Stream {
 public:
  explicit Stream(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t bits(std::uint64_t i) const { return word(seed_, i); }

  // Uniform on [0, 1): top 53 bits scaled by 2^-53.
  double uniform(std::uint64_t i) const {
    return static_cast<double>(bits(i) >> 11) * 0x1.0p-53;
  }

  // Uniform on (0, 1]: never zero, safe as a log() argument.
  double uniform_pos(std::uint64_t i) const {
    return static_cast<double>((bits(i) >> 11) + 1) * 0x1.0p-53;
  }

  // Standard-normal pair via Box-Muller on two explicit words:
  //   r = sqrt(-2 ln u1), theta = 2 pi u2  ->  (r cos theta, r sin theta)
  // with u1 = uniform_pos(w1), u2 = uniform(w2).
  std::pair<double, double> normal_from_words(std::uint64_t w1, std::uint64_t w2) const;

  // Pair i of a densely packed normal stream: words (2i, 2i+1).
  std::pair<double, double> normal_pair(std::uint64_t i) const {
    return normal_from_words(2 * i, 2 * i + 1);
  }

  // First component of normal_pair(i) (the second word is still consumed).
  double normal(std::uint64_t i) const { return normal_pair(i).first; }

 private:
  std::uint64_t seed_;
};

}  // namespace qsnr::rng
