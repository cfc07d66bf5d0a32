#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace hornlab {

enum class ErrorKind : std::uint8_t {
  Parse,      // malformed text input
  Invalid,    // well-formed input violating a precondition or invariant
  Shape,      // input not in the syntactic shape a transform requires
  Budget,     // enumeration or blow-up budget exceeded
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line, int column)
      : Error(ErrorKind::Parse, "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}
  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

class BudgetExceeded : public Error {
 public:
  BudgetExceeded(const std::string& what, long double required)
      : Error(ErrorKind::Budget, what), required_(required) {}
  /// Number of items the operation would have needed.
  long double required() const noexcept { return required_; }

 private:
  long double required_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace hornlab
