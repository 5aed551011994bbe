#pragma once

#include <stdexcept>

namespace niqsim {

/// Thrown when a contrast is requested for an intensity whose maximum and
/// minimum both vanish over the sweep, so (max-min)/(max+min) is 0/0.
class UndefinedContrastError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Thrown when a closed-form expression is evaluated outside the parameter
/// region where its derivation holds. The numeric route has no such limits.
class OutOfValidityError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace niqsim
