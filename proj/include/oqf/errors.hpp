#pragma once

#include <stdexcept>
#include <string>

namespace oqf {

// Bad input: wrong sizes, out-of-range parameters, non-finite entries.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The model is well formed but the requested physics does not exist
// (GKSL violation, no unique steady state, state leaving [0,1]).
class PhysicsError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A linear system is singular or too ill conditioned to trust.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace oqf
