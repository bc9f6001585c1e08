#pragma once

#include <stdexcept>
#include <string>

namespace paucity {

// Base class for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A requested computation exceeds the configured search budget.
class BudgetError : public Error {
public:
    using Error::Error;
};

// Enumeration volume too large (brute counters, r0 search, ...).
class BudgetExceededError : public BudgetError {
public:
    using BudgetError::BudgetError;
};

// Factorization gave up within its iteration budget. Recoverable:
// fast counters let callers fall back to brute enumeration.
class FactorizationBudgetError : public BudgetError {
public:
    using BudgetError::BudgetError;
};

class ZeroInputError : public Error {
public:
    using Error::Error;
};

// Exact polynomial division failed; when raised while certifying an
// identity this signals that the identity does not hold.
class NotDivisibleError : public Error {
public:
    using Error::Error;
};

class DivisionByZeroPolyError : public Error {
public:
    using Error::Error;
};

// Variable-count / point-length mismatch between polynomial operands.
class VariableMismatchError : public Error {
public:
    using Error::Error;
};

// The relation-polynomial kernel did not have the expected dimension.
// Carries the observed dimension instead of guessing a representative.
class KernelDimensionError : public Error {
public:
    KernelDimensionError(unsigned kappa, int dimension)
        : Error("kernel dimension " + std::to_string(dimension) +
                " (expected 1) for kappa=" + std::to_string(kappa)),
          kappa_(kappa),
          dimension_(dimension) {}
    unsigned kappa() const { return kappa_; }
    int dimension() const { return dimension_; }

private:
    unsigned kappa_;
    int dimension_;
};

// A log-log slope fit needs at least three nonzero counts.
class InsufficientNonzeroPointsError : public Error {
public:
    using Error::Error;
};

}  // namespace paucity
