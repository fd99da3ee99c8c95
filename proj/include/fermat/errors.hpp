// fermat-forms: forms of the Fermat equation over finite fields
// Copyright The fermat-forms Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef FERMAT_ERRORS_HPP
#define FERMAT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace fermat {

// Bad arguments / unmet preconditions (caller error).
struct DomainError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A computed characteristic polynomial failed to be integral.  This is
// never a user error: it signals a bug upstream in the Frobenius action.
struct NonIntegralCoefficient : std::logic_error {
  using std::logic_error::logic_error;
};

// Point-counting work estimate exceeds the configured budget.
struct BudgetExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace fermat

#endif  // FERMAT_ERRORS_HPP
