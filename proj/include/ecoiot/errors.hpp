#pragma once

#include <stdexcept>

namespace ecoiot {

// Bad input: config fields, scenario contents, domain preconditions.
// The CLI maps this to exit code 2.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The root search could not reach the requested target within its bounds.
// The CLI maps this to exit code 3.
class CalibrationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ecoiot
