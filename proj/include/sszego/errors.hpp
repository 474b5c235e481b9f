#pragma once

#include <stdexcept>
#include <string>

namespace sszego {

// Caller violated a documented precondition (degree overflow, bad shape, ...).
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Malformed polynomial / rational / config text.
class ParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class DivisionByZeroError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Raised by inverse() only; shape problems raise PreconditionError instead.
class SingularMatrixError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// An internal mathematical invariant failed. Never expected in practice.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace sszego
