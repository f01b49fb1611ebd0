#pragma once

#include <stdexcept>

namespace pspec {

// Input exceeds an explicit enumeration or brute-force bound.
struct CapacityError : std::length_error {
  using std::length_error::length_error;
};

// Vector or matrix sizes do not agree.
struct DimensionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Parameters fall outside the range where a quantity is defined.
struct RangeError : std::domain_error {
  using std::domain_error::domain_error;
};

// A value violates a type invariant (unsorted edges, empty class, ...).
struct InvariantError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

}  // namespace pspec
