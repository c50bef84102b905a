#pragma once

#include <stdexcept>
#include <string>

namespace inner {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Input and validation failures. The CLI maps these to exit code 2.
struct SpecError : Error {
  using Error::Error;
};
struct ParseError : SpecError {
  using SpecError::SpecError;
};
struct SchemaError : SpecError {
  using SpecError::SpecError;
};
struct RangeError : SpecError {
  using SpecError::SpecError;
};
struct DuplicateSingularityError : SpecError {
  using SpecError::SpecError;
};

struct InvalidArgument : Error {
  using Error::Error;
};
struct SingularPointError : Error {
  using Error::Error;
};
struct NotSingularError : Error {
  using Error::Error;
};
struct InvalidArcError : Error {
  using Error::Error;
};
struct TruncationError : Error {
  using Error::Error;
};
struct PhaseRangeError : Error {
  using Error::Error;
};
struct NoLimitError : Error {
  using Error::Error;
};
struct NotShiftableError : Error {
  using Error::Error;
};
struct RotationUnavailableError : Error {
  using Error::Error;
};
struct DomainError : Error {
  using Error::Error;
};

}  // namespace inner
