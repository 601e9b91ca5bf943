#pragma once

#include <stdexcept>
#include <string>

namespace k3ls {

/// Malformed user input: bad class, mismatched n, unsupported parameters.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Exact arithmetic left the checked 64-bit range.
class OverflowError : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

/// A computation could not complete (sampling budget, caps, singular charts).
class ComputationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace k3ls
