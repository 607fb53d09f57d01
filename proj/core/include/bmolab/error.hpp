#pragma once

#include <stdexcept>
#include <string>

namespace bmolab {

// Every failure raised by the library derives from Error so callers can catch
// the whole family at a CLI boundary and still discriminate when they care.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of an operation (p <= 0, cube
// outside the grid, non-dyadic base cube, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Inconsistent setup: mismatched grids, missing weight, malformed preset.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// A ratio whose denominator vanishes identically.
class UndefinedRatioError : public Error {
 public:
  using Error::Error;
};

// Degenerate input the experiment cannot say anything about (constant symbol,
// constant-only corpus).
class DegenerateError : public Error {
 public:
  using Error::Error;
};

class InsufficientDataError : public Error {
 public:
  using Error::Error;
};

// The kernel vanishes where its reciprocal has to be expanded.
class ZeroDivisorError : public Error {
 public:
  using Error::Error;
};

// Requested cube geometry does not fit inside the grid.
class GeometryError : public Error {
 public:
  using Error::Error;
};

}  // namespace bmolab
