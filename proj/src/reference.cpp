#include "ehy/reference.hpp"

#include <algorithm>
#include <cmath>

namespace ehy::reference {

namespace {

// Trapezoid rule over pointwise values f(t_j).
double trapezoid(const std::vector<double>& f, const Grid& grid) {
    double s = 0.0;
    for (std::size_t j = 0; j + 1 < f.size(); ++j)
        s += 0.5 * (f[j] + f[j + 1]) * (grid[j + 1] - grid[j]);
    return s;
}

}  // namespace

std::vector<IndexPair> modified_indices(const Matrix& values, const Grid& grid) {
    const Eigen::Index n = values.rows();
    const Eigen::Index m = values.cols();
    std::vector<IndexPair> out;
    out.reserve(static_cast<std::size_t>(n));
    for (Eigen::Index r = 0; r < n; ++r) {
        double sum_above = 0.0, sum_below = 0.0;
        for (Eigen::Index i = 0; i < n; ++i) {
            std::vector<double> above(static_cast<std::size_t>(m)), below(static_cast<std::size_t>(m));
            for (Eigen::Index j = 0; j < m; ++j) {
                // Lebesgue measure of a level set, approximated by the trapezoid
                // rule applied to the indicator sampled on the grid.
                above[static_cast<std::size_t>(j)] = values(i, j) >= values(r, j) ? 1.0 : 0.0;
                below[static_cast<std::size_t>(j)] = values(i, j) <= values(r, j) ? 1.0 : 0.0;
            }
            sum_above += trapezoid(above, grid);
            sum_below += trapezoid(below, grid);
        }
        const double denom = static_cast<double>(n) * grid.length();
        out.push_back({1.0 - sum_above / denom, sum_below / denom});
    }
    return out;
}

std::vector<IndexPair> area_indices(const Matrix& values, const Grid& grid) {
    const Eigen::Index n = values.rows();
    const Eigen::Index m = values.cols();
    std::vector<IndexPair> out;
    out.reserve(static_cast<std::size_t>(n));
    for (Eigen::Index r = 0; r < n; ++r) {
        double epi = 0.0, hypo = 0.0;
        for (Eigen::Index i = 0; i < n; ++i) {
            std::vector<double> pos(static_cast<std::size_t>(m)), neg(static_cast<std::size_t>(m));
            for (Eigen::Index j = 0; j < m; ++j) {
                pos[static_cast<std::size_t>(j)] = std::max(values(i, j) - values(r, j), 0.0);
                neg[static_cast<std::size_t>(j)] = std::max(values(r, j) - values(i, j), 0.0);
            }
            epi += trapezoid(pos, grid);
            hypo += trapezoid(neg, grid);
        }
        out.push_back({epi, hypo});
    }
    return out;
}

SmoothedTriple smooth_sample(const FunctionalSample& sample) {
    const Eigen::Index n = sample.values.rows();
    const Eigen::Index m = sample.values.cols();
    SmoothedTriple out{Matrix(n, m), Matrix(n, m), Matrix(n, m)};
    for (Eigen::Index i = 0; i < n; ++i) {
        SplineModel s(sample.grid, sample.values.row(i).transpose());
        out.d0.row(i) = sample.values.row(i);
        out.d1.row(i) = s.eval_at_knots(1).transpose();
        out.d2.row(i) = s.eval_at_knots(2).transpose();
    }
    return out;
}

}  // namespace ehy::reference
