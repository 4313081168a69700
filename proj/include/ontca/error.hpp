#pragma once

#include <stdexcept>
#include <string>

namespace ontca {

/// Input violates an operation's precondition (bad index, size mismatch, malformed spec).
class ValidationError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Requested enumeration or dense assembly exceeds the configured size bound.
class BoundError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace ontca
