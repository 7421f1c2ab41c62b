#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace narrowpass {

// Caller broke a precondition (dimension mismatch, non-unit direction, t
// outside [0,1], ...).
class ContractError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A numeric parameter is outside its valid domain.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Text input could not be parsed, or parsed into something invalid.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ", column " +
                           std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Rejection sampling or a search ran out of its attempt budget.
class BudgetError : public std::runtime_error {
 public:
  BudgetError(const std::string& what, std::size_t achieved)
      : std::runtime_error(what), achieved_(achieved) {}
  std::size_t achieved() const noexcept { return achieved_; }

 private:
  std::size_t achieved_;
};

}  // namespace narrowpass
