#pragma once

#include <stdexcept>
#include <string>

namespace hfm {

// Base for all library failures. Callers that only care about "did it work"
// catch this; the two subclasses separate bad input from numerical trouble.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Precondition violations: bad exponents, non-power-of-two grids, negative
// times, mismatched grids.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// The computation itself cannot be trusted: wrap-around aliasing, tail mass
// at the box boundary, non-finite samples, negativity in a flow that must be
// nonnegative.
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace hfm
