#pragma once

#include <stdexcept>
#include <string>

namespace steinitz {

// Every failure raised by the library derives from Error so callers can map
// categories onto exit codes without string matching.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Input is malformed or outside the mathematical domain of the operation.
struct InvalidInput : Error {
  using Error::Error;
};

// Kronecker symbol with zero denominator and similar undefined evaluations.
struct UndefinedInput : InvalidInput {
  using InvalidInput::InvalidInput;
};

// The caller broke a documented precondition.
struct PreconditionViolation : InvalidInput {
  using InvalidInput::InvalidInput;
};

struct ShapeMismatch : InvalidInput {
  using InvalidInput::InvalidInput;
};

struct DiscriminantMismatch : InvalidInput {
  using InvalidInput::InvalidInput;
};

struct NonSplitPrime : InvalidInput {
  using InvalidInput::InvalidInput;
};

struct CapExceeded : InvalidInput {
  using InvalidInput::InvalidInput;
};

struct UnsupportedFamily : InvalidInput {
  using InvalidInput::InvalidInput;
};

// A 64-bit intermediate would have overflowed.
struct Overflow : InvalidInput {
  using InvalidInput::InvalidInput;
};

// Prime sampling hit its hard bound before the stopping rule fired.
struct SamplingExhausted : Error {
  using Error::Error;
};

// Ramification data failed validation; the message names the clause.
struct ValidationError : Error {
  using Error::Error;
};

}  // namespace steinitz
