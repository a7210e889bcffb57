#pragma once

#include <stdexcept>

namespace matclass {

// Violated precondition on caller-supplied data: bad sizes, unparsable
// files, invalid tolerance profiles.
struct InputError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Request beyond a hard cap: minor-table order, pair-enumeration guard,
// fit order.
struct CapError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A sampling or search budget ran out before a member was found.
struct BudgetError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// An eigenvalue iteration failed to settle within its internal budget.
struct ConvergenceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace matclass
