#pragma once

#include <stdexcept>
#include <string>

namespace hpoly {

// Base class for all errors thrown by the library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed input or violated preconditions of an operation's contract
// (bad documents, mismatched rings, hypotheses the caller failed to meet).
// The command line tool maps this to exit code 2.
struct InputError : Error {
  using Error::Error;
};

// A mathematical identity that should hold failed to hold, or an internal
// exactness check tripped.  The command line tool maps this to exit code 1.
struct MathError : Error {
  using Error::Error;
};

}  // namespace hpoly
