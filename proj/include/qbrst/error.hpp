#pragma once

#include <stdexcept>
#include <string>

namespace qbrst {

/// Base for every error raised by the engine.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DivisionByZero : public Error {
 public:
  using Error::Error;
};

/// Operands live over different presentations / alphabets.
class PresentationMismatch : public Error {
 public:
  using Error::Error;
};

/// Malformed presentation, rule or basis change.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

class OrientationError : public Error {
 public:
  using Error::Error;
};

class StepLimitExceeded : public Error {
 public:
  StepLimitExceeded(const std::string& what, std::string partial)
      : Error(what), partial_(std::move(partial)) {}
  /// Rendering of the partially reduced polynomial.
  const std::string& partial() const { return partial_; }

 private:
  std::string partial_;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& msg, int line, int column)
      : Error(msg + " at " + std::to_string(line) + ":" + std::to_string(column)),
        line_(line),
        column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

}  // namespace qbrst
