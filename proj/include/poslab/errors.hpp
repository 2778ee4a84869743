#pragma once

#include <stdexcept>
#include <string>

namespace poslab {

// Bad input: dimension mismatch, out-of-range parameter, malformed text.
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A size limit (basis size, SDP dimension, expanded term count) was exceeded.
class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Numerical breakdown inside the SDP solver.
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// No grid point satisfied the constraints. This says nothing about whether
// the set itself is empty.
class InfeasibleAtResolution : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A Gram matrix had an eigenvalue too negative to clip.
class RoundingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A fit could not be formed (e.g. no samples outside the set).
class DegenerateFitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace poslab
