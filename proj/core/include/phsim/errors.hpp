#pragma once

#include <stdexcept>

namespace phsim {

/// Raised when a time integration leaves the finite range (energy explosion,
/// NaN or Inf in the state).
class BlowupError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised for malformed, unknown or out-of-range configuration input.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace phsim
