#pragma once

#include <stdexcept>
#include <string>

namespace spinlimit {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation (angle range,
/// half-integer spin where only integers make sense, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Point outside the region where an asymptotic formula is defined.
class RegionError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Measurement axes parallel or antiparallel: the classical support collapses
/// to a line and the joint density is not a function.
class DegenerateGeometryError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Problem size above a configured limit.
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// Malformed or inconsistent input (configuration, preconditions).
class InvalidInputError : public Error {
 public:
  using Error::Error;
};

class InsufficientDataError : public InvalidInputError {
 public:
  using InvalidInputError::InvalidInputError;
};

/// Two independent evaluation routes of the same quantity disagree.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

}  // namespace spinlimit
