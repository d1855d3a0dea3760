#pragma once

#include <stdexcept>
#include <string>

namespace tritronquee {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input sizes disagree (vector vs. grid, non-square matrix, ...).
class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// A configuration violates a documented invariant.
class InvalidConfiguration : public Error {
 public:
  using Error::Error;
};

/// The path between two points of a line crosses the negative real axis,
/// so the principal square root is discontinuous along it.
class BranchCutCrossed : public Error {
 public:
  using Error::Error;
};

class ZeroArgument : public Error {
 public:
  using Error::Error;
};

class SingularMatrix : public Error {
 public:
  using Error::Error;
};

}  // namespace tritronquee
