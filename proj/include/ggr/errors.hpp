#pragma once

#include <stdexcept>
#include <string>

namespace ggr {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A documented precondition was violated by the caller.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// The request is well-formed but outside what the toolkit supports.
class Unsupported : public Error {
 public:
  using Error::Error;
};

/// A configured size cap would be exceeded.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

/// Raised by rational_value() for a cyclotomic number that is not rational.
class NotRational : public Error {
 public:
  using Error::Error;
};

/// An exact computation produced an impossible value (e.g. a non-integral
/// inner product). Always indicates an arithmetic bug, never bad input.
class InternalFault : public Error {
 public:
  using Error::Error;
};

}  // namespace ggr
