#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace strl {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed formula text. Line and column are 1-based.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : Error(what + " at line " + std::to_string(line) + ", column " +
              std::to_string(column)),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// Structurally invalid formula (bad interval, wrong fragment, ...).
class FormulaError : public Error {
 public:
  using Error::Error;
};

/// Monitoring failure: unresolved region, dimension mismatch, bad window.
class EvaluationError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

/// An explicit enumeration would exceed its size guard.
class GuardExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace strl
