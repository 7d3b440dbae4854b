#pragma once

#include <stdexcept>
#include <string>

namespace shc {

/// Base of every recoverable error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A mathematical precondition does not hold (split prime, bad discriminant,
/// non-primitive form, ...).
class MathError : public Error {
 public:
  using Error::Error;
};

/// Fixed-precision p-adic arithmetic lost too many digits.
class PrecisionError : public Error {
 public:
  using Error::Error;
};

/// A bounded search ran out of room before it could certify its answer.
class BoundExhausted : public Error {
 public:
  using Error::Error;
};

/// Two routes that must agree did not. Always a bug, never caught internally.
class InternalFault : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace shc
