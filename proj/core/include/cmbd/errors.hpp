#pragma once

#include <stdexcept>
#include <string>

namespace cmbd {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A caller-supplied argument violates an operation's precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Evaluation outside the domain of a function (e.g. z = 0 with negative powers).
class DomainError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

/// A linear system is too ill-conditioned to be inverted reliably.
class ConditioningError : public Error {
 public:
  ConditioningError(const std::string& what, double condition_number)
      : Error(what), condition_number_(condition_number) {}
  double condition_number() const noexcept { return condition_number_; }

 private:
  double condition_number_;
};

/// A combinatorial enumeration would exceed its configured budget.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

/// Malformed input file.
class FormatError : public Error {
 public:
  using Error::Error;
};

}  // namespace cmbd
