#pragma once

#include <stdexcept>
#include <string>

namespace boomerang {

/// Caller violated an operation's precondition (bad arguments, illegal state
/// transition, duplicate index, ...).
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Malformed serialized input (hex, JSON, CSV).
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Not enough distinct polynomial evaluations to interpolate.
class InsufficientEvaluations : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Two evaluations claim the same index with different values.
class InconsistentEvidence : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A channel cannot lock the requested liquidity.
class LiquidityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace boomerang
