#pragma once

#include <stdexcept>
#include <string>

namespace lowrank {

// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

// A documented precondition of an operation does not hold.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// Matrix does not belong to the bounded-rank set (or a cone block exceeds its rank budget).
class MembershipError : public Error {
 public:
  using Error::Error;
};

// Retraction input is not (numerically) a tangent-cone element.
class NotTangentError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

class StationaryPointError : public Error {
 public:
  using Error::Error;
};

// Backtracking ran out of its trial budget.
class BudgetError : public Error {
 public:
  using Error::Error;
};

class OutOfBranchError : public Error {
 public:
  using Error::Error;
};

class DegenerateInputError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace lowrank
