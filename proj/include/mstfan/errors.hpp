#pragma once

#include <stdexcept>
#include <string>

namespace mstfan {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input violates a documented precondition or type invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

class MalformedRidgeError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class InvalidApexError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class DegenerateSimplexError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class InvalidCircuitError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class InfeasibleError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class BoundaryWitnessError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// Height function is not generic; `witness()` names the offending object.
class GenericityError : public ValidationError {
 public:
  GenericityError(const std::string& what, std::string witness)
      : ValidationError(what), witness_(std::move(witness)) {}
  const std::string& witness() const { return witness_; }

 private:
  std::string witness_;
};

// Refusal to run an instance beyond desk scale.
class ScaleGuardError : public Error {
 public:
  using Error::Error;
};

class FanViolationError : public Error {
 public:
  using Error::Error;
};

// Broken internal invariant (never expected on valid input).
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace mstfan
