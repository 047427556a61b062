#pragma once

#include <stdexcept>
#include <string>

namespace ellat {

// Base for runtime numerical failures. Parameter validation problems use
// std::domain_error instead; callers that want to distinguish "bad input"
// from "computation broke down" can catch the two separately.
struct numeric_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A quotient denominator (theta bracket or coefficient) landed on a zero.
struct pole_error : numeric_error {
  using numeric_error::numeric_error;
};

// Eigenvalue continuation could not match states across a parameter step
// even at the smallest allowed step size.
struct labeling_error : numeric_error {
  using numeric_error::numeric_error;
};

// An eigenvalue gap or matrix condition fell below the working tolerance,
// so a downstream quantity (projector, determinant ratio) is unreliable.
struct conditioning_error : numeric_error {
  using numeric_error::numeric_error;
};

}  // namespace ellat
