#pragma once

#include <stdexcept>
#include <string>

namespace fearconn {

/// Base for all library errors.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct SchemaError : Error {
  using Error::Error;
};
struct EmptyInputError : Error {
  using Error::Error;
};
struct FormatError : Error {
  using Error::Error;
};
struct InsufficientChainError : Error {
  using Error::Error;
};
struct ParityError : Error {
  using Error::Error;
};
struct NoStripError : Error {
  using Error::Error;
};
struct NonPositiveVarianceError : Error {
  using Error::Error;
};
struct NegativeInterpolatedVarianceError : Error {
  using Error::Error;
};
struct CollinearityError : Error {
  using Error::Error;
};
struct DomainError : Error {
  using Error::Error;
};
struct DegenerateVarianceError : Error {
  using Error::Error;
};
struct AxisMismatchError : Error {
  using Error::Error;
};
struct SeparationError : Error {
  using Error::Error;
};
struct ConvergenceError : Error {
  using Error::Error;
};
struct InsufficientSampleError : Error {
  using Error::Error;
};
struct ConfigError : Error {
  using Error::Error;
};

}  // namespace fearconn
