#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace vaf {

/// Base class for every error raised by the library: arity and carrier
/// mismatches, unknown operations, malformed automata.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Syntax error in one of the textual formats. Line and column are 1-based.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// Raised when a path enumeration or a frontier exceeds its configured cap.
class ResourceLimit : public Error {
 public:
  using Error::Error;
};

}  // namespace vaf
