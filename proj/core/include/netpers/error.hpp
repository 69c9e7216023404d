#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace netpers {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed text input. `line()` is 1-based; 0 when the error is not tied to a line.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& message)
      : Error(line == 0 ? message : "line " + std::to_string(line) + ": " + message),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// A structural invariant of an input value does not hold (self-loop, bad weight, ...).
class InvalidInput : public Error {
 public:
  using Error::Error;
};

// A brute-force routine was asked to work on an object above its size guard.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

// A persistence table violates the persistence-function axioms.
class AxiomError : public Error {
 public:
  using Error::Error;
};

}  // namespace netpers
