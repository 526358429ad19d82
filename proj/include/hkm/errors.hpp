#pragma once

#include <stdexcept>
#include <string>

namespace hkm {

// Bad caller input: dimension mismatches, malformed files, invalid configs.
// The CLI maps this to exit code 1.
struct input_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Numerical failure inside an algorithm (eigensolver breakdown, degenerate
// quadrature, too few usable tail points).  Distinct from non-convergence,
// which is reported through result flags, not exceptions.
struct numeric_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace hkm
