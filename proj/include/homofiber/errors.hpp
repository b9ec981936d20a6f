#pragma once

#include <stdexcept>
#include <string>

namespace homofiber {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands with incompatible ambient sizes.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// An argument lies outside the subspace or range an operation is defined on.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Subalgebra data or module decompositions that violate a structural hypothesis.
class StructuralError : public Error {
 public:
  using Error::Error;
};

/// A check was requested on a space or parameter set it does not apply to.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Malformed space documents or command-line input.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace homofiber
