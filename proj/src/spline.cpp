#include "ehy/spline.hpp"

#include <algorithm>
#include <cmath>

namespace ehy {

SplineModel::SplineModel(const Grid& grid, const Vector& y) : knots_(grid.points()) {
    const std::size_t m = knots_.size();
    if (static_cast<std::size_t>(y.size()) != m)
        throw validation_error("spline input length " + std::to_string(y.size()) +
                               " does not match grid size " + std::to_string(m));
    for (Eigen::Index j = 0; j < y.size(); ++j)
        if (!std::isfinite(y[j]))
            throw validation_error("non-finite spline input at index " + std::to_string(j));

    // Second derivatives M_j at the knots from the standard tridiagonal system,
    // natural boundary: M_0 = M_{m-1} = 0.
    std::vector<double> h(m - 1);
    for (std::size_t j = 0; j + 1 < m; ++j) h[j] = knots_[j + 1] - knots_[j];

    const std::size_t k = m - 2;  // interior unknowns
    std::vector<double> diag(k), rhs(k), sub(k), M(m, 0.0);
    for (std::size_t j = 0; j < k; ++j) {
        diag[j] = 2.0 * (h[j] + h[j + 1]);
        sub[j] = h[j];
        rhs[j] = 6.0 * ((y[static_cast<Eigen::Index>(j + 2)] - y[static_cast<Eigen::Index>(j + 1)]) / h[j + 1] -
                        (y[static_cast<Eigen::Index>(j + 1)] - y[static_cast<Eigen::Index>(j)]) / h[j]);
    }
    // Thomas algorithm; super-diagonal element at row j is h[j+1].
    for (std::size_t j = 1; j < k; ++j) {
        const double w = sub[j] / diag[j - 1];
        diag[j] -= w * h[j];
        rhs[j] -= w * rhs[j - 1];
    }
    if (k > 0) {
        M[m - 2] = rhs[k - 1] / diag[k - 1];
        for (std::size_t j = k - 1; j-- > 0;)
            M[j + 1] = (rhs[j] - h[j + 1] * M[j + 2]) / diag[j];
    }

    a_.resize(m - 1);
    b_.resize(m - 1);
    c_.resize(m - 1);
    d_.resize(m - 1);
    for (std::size_t j = 0; j + 1 < m; ++j) {
        a_[j] = y[static_cast<Eigen::Index>(j)];
        c_[j] = 0.5 * M[j];
        d_[j] = (M[j + 1] - M[j]) / (6.0 * h[j]);
        b_[j] = (y[static_cast<Eigen::Index>(j + 1)] - y[static_cast<Eigen::Index>(j)]) / h[j] -
                h[j] * (2.0 * M[j] + M[j + 1]) / 6.0;
    }
}

std::size_t SplineModel::locate(double t) const {
    // Piece index for t; values outside the grid use the nearest piece.
    auto it = std::upper_bound(knots_.begin(), knots_.end(), t);
    std::size_t j = (it == knots_.begin()) ? 0 : static_cast<std::size_t>(it - knots_.begin()) - 1;
    return std::min(j, a_.size() - 1);
}

double SplineModel::eval(double t, int derivative_order) const {
    const std::size_t j = locate(t);
    const double h = t - knots_[j];
    switch (derivative_order) {
        case 0: return a_[j] + h * (b_[j] + h * (c_[j] + h * d_[j]));
        case 1: return b_[j] + h * (2.0 * c_[j] + 3.0 * h * d_[j]);
        case 2: return 2.0 * c_[j] + 6.0 * h * d_[j];
        default: throw validation_error("derivative order must be 0, 1 or 2");
    }
}

Vector SplineModel::eval_at_knots(int derivative_order) const {
    const std::size_t m = knots_.size();
    Vector out(m);
    for (std::size_t j = 0; j < m; ++j) {
        // Evaluate the left piece's value at the knot; C2 continuity makes the
        // choice irrelevant up to rounding, and order 0 reproduces the data exactly.
        const std::size_t piece = (j == 0) ? 0 : j - 1;
        const double h = knots_[j] - knots_[piece];
        switch (derivative_order) {
            case 0:
                out[static_cast<Eigen::Index>(j)] = (j == 0 || h == 0.0)
                    ? a_[piece]
                    : a_[piece] + h * (b_[piece] + h * (c_[piece] + h * d_[piece]));
                break;
            case 1:
                out[static_cast<Eigen::Index>(j)] =
                    b_[piece] + h * (2.0 * c_[piece] + 3.0 * h * d_[piece]);
                break;
            case 2:
                out[static_cast<Eigen::Index>(j)] = 2.0 * c_[piece] + 6.0 * h * d_[piece];
                break;
            default:
                throw validation_error("derivative order must be 0, 1 or 2");
        }
    }
    if (derivative_order == 0) {
        // Interpolation is exact at knots; use the stored ordinates directly.
        for (std::size_t j = 0; j + 1 < m; ++j) out[static_cast<Eigen::Index>(j)] = a_[j];
    }
    return out;
}

SplineModel fit_natural_cubic_spline(const Grid& grid, const Vector& y) {
    return SplineModel(grid, y);
}

SmoothedTriple smooth_sample(const FunctionalSample& sample) {
    validate(sample);
    const Eigen::Index n = sample.values.rows();
    const Eigen::Index m = sample.values.cols();
    SmoothedTriple out{Matrix(n, m), Matrix(n, m), Matrix(n, m)};

#pragma omp parallel for schedule(static)
    for (Eigen::Index i = 0; i < n; ++i) {
        SplineModel s(sample.grid, sample.values.row(i).transpose());
        out.d0.row(i) = sample.values.row(i);  // interpolation invariant, kept exact
        out.d1.row(i) = s.eval_at_knots(1).transpose();
        out.d2.row(i) = s.eval_at_knots(2).transpose();
    }
    return out;
}

}  // namespace ehy
