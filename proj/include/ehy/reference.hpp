#pragma once

#include "ehy/core.hpp"
#include "ehy/indices.hpp"
#include "ehy/spline.hpp"

// Serial reference implementations of the hot kernels. They are written
// independently of the OpenMP versions (plain loops, explicit trapezoid rule)
// and are kept for correctness testing and as a benchmark baseline.

namespace ehy::reference {

std::vector<IndexPair> modified_indices(const Matrix& values, const Grid& grid);
std::vector<IndexPair> area_indices(const Matrix& values, const Grid& grid);
SmoothedTriple smooth_sample(const FunctionalSample& sample);

}  // namespace ehy::reference
