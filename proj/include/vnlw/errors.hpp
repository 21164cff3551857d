#pragma once

#include <stdexcept>
#include <string>

namespace vnlw {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct BadDimension : Error {
  using Error::Error;
};

struct GridMismatch : Error {
  using Error::Error;
};

struct NotHermitianData : Error {
  using Error::Error;
};

struct NotPurelyImaginary : Error {
  using Error::Error;
};

struct TooLarge : Error {
  using Error::Error;
};

struct SingularSystem : Error {
  using Error::Error;
};

struct EmptyTrajectory : Error {
  using Error::Error;
};

struct NonuniformTimes : Error {
  using Error::Error;
};

struct ParseError : Error {
  using Error::Error;
};

struct ValidationError : Error {
  using Error::Error;
};

namespace tol {
// Default tolerances: algebraic identities vs linear solves. Overridable
// at every call site that exposes them.
inline constexpr double algebra = 1e-12;
inline constexpr double solve = 1e-10;
}  // namespace tol

}  // namespace vnlw
