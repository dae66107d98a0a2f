#pragma once

#include <stdexcept>
#include <string>

namespace ratext {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Parameter or seed degree sits on a boundary excluded by a strict inequality
/// (integer or half-integer coupling, v = 2h, ...).
class NonGenericError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Seed kind or degree outside every admissible range.
class InvalidSeedError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Extension spec violates a structural invariant.
class InvalidSpecError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Extension whose Wronskian has nodes inside the domain.
class SingularExtensionError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Krein-Adler equivalence is not available for the family/parameters.
class EquivalenceUnavailableError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Internal exact identity failed (e.g. non-vanishing imaginary residue).
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace ratext
