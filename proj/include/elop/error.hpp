#ifndef ELOP_ERROR_HPP
#define ELOP_ERROR_HPP

#include <stdexcept>
#include <string>

namespace elop {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Shapes do not conform (non-square input, length mismatch, k > q, ...).
class DimensionError : public Error {
public:
  using Error::Error;
};

/// An iterative kernel hit its iteration cap.
class ConvergenceError : public Error {
public:
  using Error::Error;
};

/// A Kronecker realization would exceed the configured size cap.
class CapacityError : public Error {
public:
  using Error::Error;
};

/// A hypothesis the operation relies on (normality, commutation, PSD, ...)
/// does not hold within tolerance.
class PreconditionError : public Error {
public:
  using Error::Error;
};

/// Invalid optimizer or runner configuration.
class ConfigError : public Error {
public:
  using Error::Error;
};

/// Malformed input file.
class ParseError : public Error {
public:
  using Error::Error;
};

} // namespace elop

#endif // ELOP_ERROR_HPP
