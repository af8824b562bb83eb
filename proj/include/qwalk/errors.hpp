#pragma once

#include <stdexcept>
#include <string>

namespace qwalk {

/// Invalid input: bad sizes, non-normalized spinors, malformed specs.
/// Maps to CLI exit code 2.
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A site or window index outside the lattice.
struct IndexError : ValidationError {
  using ValidationError::ValidationError;
};

/// Requested evolution would let amplitude reach the lattice boundary.
struct GuardError : ValidationError {
  using ValidationError::ValidationError;
};

/// Numerical failure: eigensolver breakdown, invalid density matrix,
/// unusable fit data. Maps to CLI exit code 3.
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Not enough usable samples to run a regression.
struct FitError : NumericalError {
  using NumericalError::NumericalError;
};

} // namespace qwalk
