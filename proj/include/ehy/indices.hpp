#pragma once

#include "ehy/core.hpp"
#include "ehy/spline.hpp"

namespace ehy {

struct IndexPair {
    double epigraph;
    double hypograph;
};

/// n x 6 feature matrix, columns in fixed order:
/// ABEI_d0, ABHI_d0, ABEI_d1, ABHI_d1, ABEI_d2, ABHI_d2.
using IndexMatrix = Matrix;

inline constexpr const char* kIndexColumnNames[6] = {
    "ABEI_d0", "ABHI_d0", "ABEI_d1", "ABHI_d1", "ABEI_d2", "ABHI_d2"};

/// Modified epigraph/hypograph indices of every curve against the whole sample
/// (the curve itself included, non-strict inequalities). Lebesgue measure on
/// the grid is approximated by trapezoid weights.
std::vector<IndexPair> modified_indices(const Matrix& values, const Grid& grid);

/// Area-based epigraph/hypograph indices: summed trapezoid integrals of the
/// pointwise positive parts (x_i - x)_+ and (x - x_i)_+.
std::vector<IndexPair> area_indices(const Matrix& values, const Grid& grid);

/// Self-test: ABHI on the sample equals ABEI on the negated sample,
/// entrywise to 1e-12 relative.
bool reflection_check(const Matrix& values, const Grid& grid);

/// Assembles the n x 6 matrix of area indices on d0, d1, d2.
IndexMatrix feature_matrix(const SmoothedTriple& triple, const Grid& grid);

}  // namespace ehy
