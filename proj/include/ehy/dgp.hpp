#pragma once

#include "ehy/core.hpp"
#include "ehy/rng.hpp"

#include <cstdint>
#include <string>

namespace ehy {

/// Stationary covariance function variance * exp(-rate * |s-t|^power).
struct Kernel {
    std::string name;
    double variance;
    double rate;
    double power;

    double operator()(double s, double t) const {
        return variance * std::exp(-rate * std::pow(std::abs(s - t), power));
    }
};

namespace kernels {
Kernel smooth_unit();      // exp(-|s-t|)
Kernel smooth_small();     // 0.3 exp(-|s-t|/0.3)
Kernel rough_large();      // 5 exp(-2 |s-t|^0.5)
Kernel very_rough_large(); // 6 exp(-|s-t|^0.1)
Kernel very_rough_small(); // 0.1 exp(-|s-t|^0.1 / 4)
Kernel trend_noise();      // 0.2 exp(-|s-t|/0.3)
}  // namespace kernels

/// Declarative generator configuration for one simulated dataset.
struct DgpSpec {
    int id = 1;          // 1..19
    int n = 200;
    int m = 0;           // grid size; 0 = per-DGP default (100, or 500 for id 11)
    double alpha = 0.1;  // outlier proportion, in [0, 0.5)
    std::uint64_t seed = 0;
};

/// Draws `count` zero-mean Gaussian process paths on the grid. Each path uses
/// its own RNG substream, so results are independent of draw order.
Matrix gp_sample(const Grid& grid, const Kernel& kernel, int count, const Rng& rng);

/// Generates the sample for one data-generation process, with labels attached
/// and outliers placed at randomized positions. Bit-reproducible given spec.
FunctionalSample generate(const DgpSpec& spec);

/// Number of outliers for a spec: round(alpha*n), at least 1 when alpha > 0.
int outlier_count(const DgpSpec& spec);

/// Cubic B-spline basis (order 4, clamped equispaced knots on [0,1]) evaluated
/// on the grid; m x n_basis.
Matrix bspline_basis(const Grid& grid, int n_basis);

/// Random orthonormal matrix via QR of a standard normal matrix, with the
/// diag(R) > 0 sign convention.
Matrix random_orthonormal(int p, Rng& rng);

}  // namespace ehy
