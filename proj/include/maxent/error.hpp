#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace maxent {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operand dimensions do not fit together.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// An argument lies outside the domain of the requested operation
/// (non-Hermitian input, log of a non-positive eigenvalue, ...).
class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what, double offending_value = 0.0)
      : Error(what), offending_value_(offending_value) {}

  double offending_value() const noexcept { return offending_value_; }

 private:
  double offending_value_;
};

/// A state with positive posterior weight has zero prior weight.
class SupportViolation : public DomainError {
 public:
  SupportViolation(const std::string& what, std::size_t index)
      : DomainError(what), index_(index) {}

  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

/// The constraint targets admit no interior maximizer.
class InfeasibleError : public Error {
 public:
  using Error::Error;
};

/// An inner numerical routine (the eigensolver) failed to converge.
class SolverFailure : public Error {
 public:
  SolverFailure(const std::string& what, std::size_t dim, int iterations)
      : Error(what), dim_(dim), iterations_(iterations) {}

  std::size_t dim() const noexcept { return dim_; }
  int iterations() const noexcept { return iterations_; }

 private:
  std::size_t dim_;
  int iterations_;
};

}  // namespace maxent
