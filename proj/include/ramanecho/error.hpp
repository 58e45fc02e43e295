#pragma once

#include <stdexcept>
#include <string>

namespace ramanecho {

// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Inputs that violate a documented precondition or schema.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Scenario text that could not be parsed; carries a 1-based line number
// (0 when unknown).
class ParseError : public ValidationError {
 public:
  ParseError(const std::string& what, int line)
      : ValidationError(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}

  int line() const noexcept { return line_; }

 private:
  int line_;
};

// A propagation produced non-finite numbers or could not be carried out.
class NumericalError : public Error {
 public:
  using Error::Error;
};

// File-system failures (missing input, unwritable output).
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace ramanecho
