#pragma once

#include <stdexcept>
#include <string>

namespace copdyn {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// An atom of the queried set maps outside the truncation window.
struct ExitEncountered : Error {
  using Error::Error;
};

// A preimage is not a union of blocks: f is not measurable for this algebra.
struct NonMeasurablePreimage : Error {
  using Error::Error;
};

// The k-step block graph is not an (in/out degree <= 1) functional graph.
struct NotInjective : Error {
  using Error::Error;
};

// No measurable C with f^-k(C) equal to the requested set exists.
struct NoSolvablePullback : Error {
  using Error::Error;
};

// Certificate epsilon exceeds the (H4) threshold for the requested eta.
struct BudgetTooLoose : Error {
  using Error::Error;
};

}  // namespace copdyn
