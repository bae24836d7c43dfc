#pragma once

#include <stdexcept>
#include <string>

namespace beatty {

// Base of every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Interval evaluation hit the configured precision cap without deciding.
class PrecisionExhausted : public Error {
 public:
  using Error::Error;
};

// A requested size exceeds the configured memory or transform bound.
class LimitTooLarge : public Error {
 public:
  using Error::Error;
};

// Smoothing width outside 0 < delta < min(gamma, 1 - gamma) / 4.
class InvalidWidth : public Error {
 public:
  using Error::Error;
};

class ToleranceUnreachable : public Error {
 public:
  using Error::Error;
};

class ZeroVector : public Error {
 public:
  using Error::Error;
};

// Malformed text input (expressions, config files). Carries a line number
// when the error comes from a file.
class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what, int line = 0)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

// Well-formed input that breaks a domain invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

}  // namespace beatty
