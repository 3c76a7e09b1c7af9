#pragma once

#include <stdexcept>
#include <string>

namespace krein {

/// Malformed or out-of-contract input (dimension mismatch, bad parameter range).
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Unparseable or schema-violating JSON.
class MalformedInput : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

/// A structural identity that must hold for valid inputs failed numerically.
class InvariantViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The requested computation cannot be resolved at the configured
/// discretization (under-resolved grid, frequency band overflow, ...).
class ResolutionRefused : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// I + T is singular: the Cayley transform would be an unbounded operator.
class CayleyUndefined : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A subspace expected to be a graph over H+ or H- is numerically rank deficient.
class NumericalRankFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace krein
