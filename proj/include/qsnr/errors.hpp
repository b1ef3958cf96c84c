#pragma once

#include <stdexcept>
#include <string>

namespace qsnr {

// Base class for all library errors so callers can catch everything in one arm.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// A user-supplied integrand or iterate produced NaN/Inf.
struct NonFiniteError : Error {
  using Error::Error;
};

// golden_minimize was called with lo >= hi.
struct BadBracketError : Error {
  using Error::Error;
};

// bisect_root was called with f(lo) and f(hi) of the same sign.
struct NoSignChangeError : Error {
  using Error::Error;
};

// The designer's bracket scan found no sign change of the critical function.
struct NoBracketError : Error {
  using Error::Error;
};

// The state-evolution recursion diverged (no finite fixed point).
struct SeDivergedError : Error {
  using Error::Error;
};

// An AMP iterate left the plausible numerical range.
struct NumericalBlowupError : Error {
  using Error::Error;
};

// An experiment specification violates a precondition; message names the field.
struct InvalidSpecError : Error {
  using Error::Error;
};

// Every Monte Carlo trial at some grid point ended in a blowup.
struct AllTrialsFailedError : Error {
  using Error::Error;
};

}  // namespace qsnr
