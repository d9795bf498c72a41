#pragma once

#include <stdexcept>
#include <string>

namespace hawkes {

// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// I - G is numerically singular.
struct SingularMatrix : Error {
  using Error::Error;
};

// Spectral radius of G is >= 1.
struct NonStationary : Error {
  using Error::Error;
};

// Cumulant window does not fit the observation interval (2H >= T).
struct WindowTooLarge : Error {
  using Error::Error;
};

// Covariance density never drops below the noise floor on the given grid.
struct NoDecayDetected : Error {
  using Error::Error;
};

struct MismatchedShapes : Error {
  using Error::Error;
};

// Both input cumulant norms are zero.
struct DegenerateCumulants : Error {
  using Error::Error;
};

// Some mean-intensity entry is zero where a positive value is required.
struct DegenerateLambda : Error {
  using Error::Error;
};

// Estimated R is not invertible at the optimum.
struct SingularRHat : Error {
  using Error::Error;
};

struct ParseError : Error {
  ParseError(const std::string& what, long line_number)
      : Error(what + " (line " + std::to_string(line_number) + ")"),
        line(line_number) {}
  long line;
};

// Duplicate-timestamp repair could not restore strict ordering.
struct NonmonotonicAfterRepair : Error {
  using Error::Error;
};

}  // namespace hawkes
