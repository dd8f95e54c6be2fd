#pragma once

#include <stdexcept>
#include <string>

namespace tropbilevel {

/// Vectors, polytopes or constraint blocks of incompatible dimension.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Precondition on coefficients or index sets violated.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The instance is valid but outside what the chosen method handles
/// (bottom coordinates where finite data is required, wrong variant, ...).
class UnsupportedInstance : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Selector enumeration or oracle sampling would exceed its budget.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A point handed to a checker is not in the polytope it should belong to.
class InfeasiblePoint : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The optimization problem has no feasible point.
class InfeasibleProblem : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace tropbilevel
