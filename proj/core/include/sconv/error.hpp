#pragma once

#include <stdexcept>
#include <string>

namespace sconv {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed set spec, bad CLI argument, or similar textual input.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Argument outside an operation's domain (n = 0, non-prime in a prime list, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A 128-bit value or accumulator would have wrapped.
class OverflowError : public Error {
 public:
  using Error::Error;
};

/// A membership query or table request beyond what is known or allowed.
class BoundError : public Error {
 public:
  using Error::Error;
};

/// Two computation routes that must agree did not.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

}  // namespace sconv
