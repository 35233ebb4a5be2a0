#pragma once

#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "modsurf/types.hpp"

namespace modsurf::testing {

inline double rel_diff(cplx a, cplx b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

// Values frozen from tests/oracles/reference_values.py.
#define CHECK_REL(actual, expected, tol) CHECK(::modsurf::testing::rel_diff((actual), (expected)) <= (tol))
#define CHECK_ABS(actual, expected, tol) CHECK(std::abs((actual) - (expected)) <= (tol))

}  // namespace modsurf::testing
