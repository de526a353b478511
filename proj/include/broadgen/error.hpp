#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace broadgen {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A node, element, depth or fuel ceiling was hit.
class BudgetError : public Error {
 public:
  using Error::Error;
};

// Bad argument shape: wrong arity, value outside the expected fragment, ...
class DomainError : public Error {
 public:
  using Error::Error;
};

// A result family without a finite enumerator was asked to enumerate.
class NonFinitaryError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : Error(what + " at " + std::to_string(line) + ":" + std::to_string(column)),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace broadgen
