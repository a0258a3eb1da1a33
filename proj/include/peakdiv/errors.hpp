#pragma once

#include <stdexcept>
#include <string>

namespace peakdiv {

// Invalid values or violated preconditions (negative amounts, bad slopes,
// malformed economies, gamma outside its admissible range, ...).
struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Solver target outside the feasible range of the water-filling equation.
struct InfeasibleError : DomainError {
    using DomainError::DomainError;
};

// Bisection oracle called without F(lo) <= target <= F(hi).
struct BracketError : DomainError {
    using DomainError::DomainError;
};

// Serial-dictator order is not a permutation of the economy's agents.
struct OrderMismatchError : DomainError {
    using DomainError::DomainError;
};

// Agent-departure reduction whose kept agents received a total of zero;
// the reduced economy would have no endowment to divide.
struct DegenerateReductionError : DomainError {
    using DomainError::DomainError;
};

// Enumeration (profile grids, audits) larger than the configured cap.
struct BudgetExceededError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed JSON or numeric input.
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace peakdiv
