#pragma once

#include <stdexcept>
#include <string>

namespace nlgames {

// Malformed values: shape mismatch, non-Hermitian input, bad probabilities.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A requested enumeration or LP exceeds the fixed size budget.
class BudgetExceeded : public std::length_error {
 public:
  using std::length_error::length_error;
};

// A result failed its own post-condition check (e.g. LP infeasible, argmax
// behavior not no-signaling). Always a bug, never bad input.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace nlgames
