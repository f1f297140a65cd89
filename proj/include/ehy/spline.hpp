#pragma once

#include "ehy/core.hpp"

namespace ehy {

/// Natural cubic interpolating spline on the observation grid.
/// On interval [t_j, t_{j+1}] the piece is
///   a_j + b_j*h + c_j*h^2 + d_j*h^3 with h = t - t_j.
class SplineModel {
public:
    SplineModel(const Grid& grid, const Vector& y);

    double eval(double t, int derivative_order = 0) const;

    /// Evaluations at all knots for derivative order 0, 1 or 2.
    Vector eval_at_knots(int derivative_order) const;

    const std::vector<double>& knots() const { return knots_; }

private:
    std::vector<double> knots_;
    std::vector<double> a_, b_, c_, d_;  // m-1 pieces
    std::size_t locate(double t) const;
};

/// Spline evaluations of derivative order 0, 1, 2 on the grid; one row per curve.
struct SmoothedTriple {
    Matrix d0, d1, d2;
};

SplineModel fit_natural_cubic_spline(const Grid& grid, const Vector& y);

/// Fits one spline per curve (in parallel) and evaluates orders 0-2 at the knots.
SmoothedTriple smooth_sample(const FunctionalSample& sample);

}  // namespace ehy
