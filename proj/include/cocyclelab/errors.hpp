#pragma once

#include <stdexcept>
#include <string>

namespace cocyclelab {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A point or observable was combined with a system of the other variant
// (or lies outside the system's state space).
class VariantMismatch : public Error {
 public:
  using Error::Error;
};

// The system returns to the start point within the requested horizon, so no
// separated orbit segment (and hence no instability witness) exists there.
class PeriodicAtHorizon : public Error {
 public:
  using Error::Error;
};

// A bump radius too large for the iterate supports to stay pairwise disjoint.
class InvalidRadius : public Error {
 public:
  using Error::Error;
};

// Operation not defined for this system variant.
class UnsupportedSystem : public Error {
 public:
  using Error::Error;
};

// Malformed textual input (rational strings, JSON records, CLI values).
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace cocyclelab
