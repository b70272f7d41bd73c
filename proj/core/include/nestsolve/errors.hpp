#pragma once

#include <stdexcept>

namespace nestsolve {

// Instance or solution file could not be parsed; the message names the
// offending field or location.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The brute-force oracle refuses inputs beyond its enumeration budget.
struct TooLargeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct EmptyCandidateSetError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct InvalidInstanceError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct BadSpecError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

}  // namespace nestsolve
