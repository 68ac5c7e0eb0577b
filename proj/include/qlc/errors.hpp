#pragma once

#include <stdexcept>
#include <string>

namespace qlc {

// Violated precondition (dimension mismatch, out-of-domain argument).
class ContractError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Request exceeds an exhaustive-enumeration budget.
class BudgetError : public std::length_error {
 public:
  using std::length_error::length_error;
};

// Malformed text/JSON/CSV input.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline void require(bool condition, const std::string& message) {
  if (!condition) throw ContractError(message);
}

inline void require_budget(bool condition, const std::string& message) {
  if (!condition) throw BudgetError(message);
}

}  // namespace detail
}  // namespace qlc
