#include "ehy/dgp.hpp"

#include <Eigen/Cholesky>
#include <Eigen/QR>
#include <cmath>
#include <iostream>
#include <numeric>

namespace ehy {

namespace kernels {
Kernel smooth_unit() { return {"smooth_unit", 1.0, 1.0, 1.0}; }
Kernel smooth_small() { return {"smooth_small", 0.3, 1.0 / 0.3, 1.0}; }
Kernel rough_large() { return {"rough_large", 5.0, 2.0, 0.5}; }
Kernel very_rough_large() { return {"very_rough_large", 6.0, 1.0, 0.1}; }
Kernel very_rough_small() { return {"very_rough_small", 0.1, 0.25, 0.1}; }
Kernel trend_noise() { return {"trend_noise", 0.2, 1.0 / 0.3, 1.0}; }
}  // namespace kernels

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

Matrix covariance_matrix(const Grid& grid, const Kernel& kernel) {
    const std::size_t m = grid.size();
    Matrix cov(m, m);
    for (std::size_t j = 0; j < m; ++j)
        for (std::size_t k = j; k < m; ++k) {
            const double v = kernel(grid[j], grid[k]);
            cov(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k)) = v;
            cov(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(j)) = v;
        }
    return cov;
}

/// Lower Cholesky factor with escalating diagonal jitter on failure.
Matrix cholesky_factor(const Grid& grid, const Kernel& kernel) {
    Matrix cov = covariance_matrix(grid, kernel);
    for (double jitter : {0.0, 1e-10, 1e-8, 1e-6}) {
        Matrix c = cov;
        if (jitter > 0.0)
            c.diagonal().array() += jitter * kernel.variance;
        Eigen::LLT<Matrix> llt(c);
        if (llt.info() == Eigen::Success) return llt.matrixL();
    }
    throw std::runtime_error("covariance Cholesky failed for kernel " + kernel.name +
                             " even with maximum jitter");
}

Vector gp_draw(const Matrix& chol, Rng& rng) {
    Vector z(chol.rows());
    for (Eigen::Index j = 0; j < z.size(); ++j) z[j] = rng.normal();
    return chol * z;
}

Matrix orthonormalize(const Matrix& a) {
    Eigen::HouseholderQR<Matrix> qr(a);
    Matrix q = qr.householderQ();
    Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index j = 0; j < a.cols(); ++j)
        if (r(j, j) < 0.0) q.col(j) *= -1.0;
    return q;
}

}  // namespace

// Cox-de Boor recursion.
Matrix bspline_basis(const Grid& grid, int n_basis) {
    const int order = 4;
    const int n_knots = n_basis + order;
    std::vector<double> knots(static_cast<std::size_t>(n_knots));
    const int n_interior = n_basis - order;  // between the clamped ends
    for (int i = 0; i < order; ++i) {
        knots[static_cast<std::size_t>(i)] = 0.0;
        knots[static_cast<std::size_t>(n_knots - 1 - i)] = 1.0;
    }
    for (int i = 1; i <= n_interior; ++i)
        knots[static_cast<std::size_t>(order - 1 + i)] =
            static_cast<double>(i) / static_cast<double>(n_interior + 1);

    const std::size_t m = grid.size();
    Matrix basis = Matrix::Zero(static_cast<Eigen::Index>(m), n_basis);
    std::vector<double> b(static_cast<std::size_t>(n_knots - 1));
    for (std::size_t row = 0; row < m; ++row) {
        const double t = std::min(grid[row], 1.0 - 1e-14);  // keep t inside the last span
        // Degree 0.
        for (int i = 0; i + 1 < n_knots; ++i)
            b[static_cast<std::size_t>(i)] =
                (knots[static_cast<std::size_t>(i)] <= t && t < knots[static_cast<std::size_t>(i + 1)]) ? 1.0 : 0.0;
        // Raise the degree.
        for (int k = 1; k < order; ++k) {
            for (int i = 0; i + k + 1 < n_knots; ++i) {
                const double d1 = knots[static_cast<std::size_t>(i + k)] - knots[static_cast<std::size_t>(i)];
                const double d2 = knots[static_cast<std::size_t>(i + k + 1)] - knots[static_cast<std::size_t>(i + 1)];
                double v = 0.0;
                if (d1 > 0.0) v += (t - knots[static_cast<std::size_t>(i)]) / d1 * b[static_cast<std::size_t>(i)];
                if (d2 > 0.0)
                    v += (knots[static_cast<std::size_t>(i + k + 1)] - t) / d2 * b[static_cast<std::size_t>(i + 1)];
                b[static_cast<std::size_t>(i)] = v;
            }
        }
        for (int i = 0; i < n_basis; ++i)
            basis(static_cast<Eigen::Index>(row), i) = b[static_cast<std::size_t>(i)];
    }
    return basis;
}

Matrix random_orthonormal(int p, Rng& rng) {
    Matrix a(p, p);
    for (Eigen::Index i = 0; i < p; ++i)
        for (Eigen::Index j = 0; j < p; ++j) a(i, j) = rng.normal();
    return orthonormalize(a);
}

Matrix gp_sample(const Grid& grid, const Kernel& kernel, int count, const Rng& rng) {
    if (count < 1) throw validation_error("gp_sample count must be positive");
    const Matrix chol = cholesky_factor(grid, kernel);
    Matrix out(count, static_cast<Eigen::Index>(grid.size()));
#pragma omp parallel for schedule(static)
    for (int c = 0; c < count; ++c) {
        Rng stream = rng.substream(static_cast<std::uint64_t>(c));
        out.row(c) = gp_draw(chol, stream).transpose();
    }
    return out;
}

int outlier_count(const DgpSpec& spec) {
    if (spec.alpha == 0.0) return 0;
    const int k = static_cast<int>(std::lround(spec.alpha * spec.n));
    if (k == 0) {
        std::cerr << "warning: alpha*n rounds to zero, raising outlier count to 1\n";
        return 1;
    }
    return k;
}

FunctionalSample generate(const DgpSpec& spec) {
    if (spec.id < 1 || spec.id > 19)
        throw validation_error("dgp id must be 1..19, got " + std::to_string(spec.id));
    if (spec.n < 2) throw validation_error("need at least two curves");
    if (spec.alpha < 0.0 || spec.alpha >= 0.5)
        throw validation_error("alpha must be in [0, 0.5)");
    const int m = spec.m > 0 ? spec.m : (spec.id == 11 ? 500 : 100);
    if (m < 4) throw validation_error("grid size must be at least 4");

    // DGP 11 is defined on the grid x_t = t/m, t = 1..m; the others on [0,1].
    Grid grid = [&] {
        if (spec.id != 11) return Grid::equispaced01(static_cast<std::size_t>(m));
        std::vector<double> pts(static_cast<std::size_t>(m));
        for (int j = 0; j < m; ++j)
            pts[static_cast<std::size_t>(j)] = static_cast<double>(j + 1) / static_cast<double>(m);
        return Grid(std::move(pts));
    }();

    const Rng root = Rng(spec.seed).substream(static_cast<std::uint64_t>(spec.id));
    Rng meta = root.substream(0xFFFFFFFFFFFFFFFFULL);

    // Outlier positions: partial Fisher-Yates from the sample-level stream.
    const int n_out = outlier_count(spec);
    std::vector<int> order(static_cast<std::size_t>(spec.n));
    std::iota(order.begin(), order.end(), 0);
    for (int i = 0; i < n_out; ++i) {
        const auto j = i + static_cast<int>(meta.uniform_int(static_cast<std::uint64_t>(spec.n - i)));
        std::swap(order[static_cast<std::size_t>(i)], order[static_cast<std::size_t>(j)]);
    }
    std::vector<bool> labels(static_cast<std::size_t>(spec.n), false);
    for (int i = 0; i < n_out; ++i) labels[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])] = true;

    // Cholesky factors for the kernels this DGP needs.
    const Kernel gamma = kernels::smooth_unit();
    Matrix chol_main, chol_out;
    switch (spec.id) {
        case 4:
            chol_main = cholesky_factor(grid, kernels::smooth_small());
            chol_out = chol_main;
            break;
        case 5:
            chol_main = cholesky_factor(grid, gamma);
            chol_out = cholesky_factor(grid, kernels::rough_large());
            break;
        case 10:
            chol_main = cholesky_factor(grid, gamma);
            chol_out = cholesky_factor(grid, kernels::rough_large());  // for the DGP5-style branch
            break;
        case 12:
            chol_main = cholesky_factor(grid, gamma);
            chol_out = cholesky_factor(grid, kernels::very_rough_large());
            break;
        case 14:
        case 15:
        case 16:
            chol_main = cholesky_factor(grid, gamma);
            chol_out = cholesky_factor(grid, kernels::very_rough_small());
            break;
        case 17:
            chol_main = cholesky_factor(grid, kernels::trend_noise());
            chol_out = chol_main;
            break;
        case 18:
            chol_main = cholesky_factor(grid, gamma);
            chol_out = cholesky_factor(grid, kernels::trend_noise());
            break;
        case 11:
        case 19:
            break;  // no Gaussian process term
        default:
            chol_main = cholesky_factor(grid, gamma);
            chol_out = chol_main;
            break;
    }

    // Shared structures for DGP 19.
    Matrix basis, rot_in, rot_out;
    if (spec.id == 19) {
        basis = bspline_basis(grid, 25);
        rot_in = random_orthonormal(25, meta);
        Matrix extra = random_orthonormal(25, meta);
        rot_out = orthonormalize(rot_in * (1.1 * extra));
    }

    const std::size_t msz = grid.size();
    Matrix values(spec.n, static_cast<Eigen::Index>(msz));

#pragma omp parallel for schedule(static)
    for (int i = 0; i < spec.n; ++i) {
        Rng cs = root.substream(1, static_cast<std::uint64_t>(i));
        const bool outlier = labels[static_cast<std::size_t>(i)];
        Vector row(static_cast<Eigen::Index>(msz));

        auto fill = [&](auto&& mean_fn, const Matrix& chol) {
            Vector noise = gp_draw(chol, cs);
            for (std::size_t j = 0; j < msz; ++j)
                row[static_cast<Eigen::Index>(j)] = mean_fn(grid[j]) + noise[static_cast<Eigen::Index>(j)];
        };

        // Outlier branch of DGPs 1, 2, 5, 7 (also used by DGP 10).
        auto shared_outlier = [&](int model) {
            switch (model) {
                case 1: {
                    const double k = cs.bernoulli() ? 1.0 : -1.0;
                    fill([&](double t) { return 4.0 * t + 8.0 * k; }, chol_main);
                    break;
                }
                case 2: {
                    const double k = cs.bernoulli() ? 1.0 : -1.0;
                    const double T = cs.uniform(0.1, 0.9);
                    fill([&](double t) {
                        return 4.0 * t + ((T <= t && t <= T + 0.05) ? 8.0 * k : 0.0);
                    }, chol_main);
                    break;
                }
                case 5:
                    fill([&](double t) { return 4.0 * t; }, chol_out);
                    break;
                case 7: {
                    const double theta = cs.uniform(0.25, 0.75);
                    fill([&](double t) { return 4.0 * t + 2.0 * std::sin(4.0 * kPi * (t + theta)); },
                         chol_main);
                    break;
                }
            }
        };

        switch (spec.id) {
            case 1:
                if (!outlier) fill([](double t) { return 4.0 * t; }, chol_main);
                else shared_outlier(1);
                break;
            case 2:
                if (!outlier) fill([](double t) { return 4.0 * t; }, chol_main);
                else shared_outlier(2);
                break;
            case 3:
                if (!outlier) fill([](double t) { return 4.0 * t; }, chol_main);
                else {
                    const double k = cs.bernoulli() ? 1.0 : -1.0;
                    const double T = cs.uniform(0.1, 0.9);
                    fill([&](double t) { return 4.0 * t + (t >= T ? 8.0 * k : 0.0); }, chol_main);
                }
                break;
            case 4:
                if (!outlier)
                    fill([](double t) { return 30.0 * t * std::pow(1.0 - t, 1.5); }, chol_main);
                else
                    fill([](double t) { return 30.0 * (1.0 - t) * std::pow(t, 1.5); }, chol_out);
                break;
            case 5:
                if (!outlier) fill([](double t) { return 4.0 * t; }, chol_main);
                else shared_outlier(5);
                break;
            case 6:
                if (!outlier) fill([](double t) { return 4.0 * t; }, chol_main);
                else {
                    const double u = cs.bernoulli() ? 1.0 : 0.0;
                    const double v = cs.uniform(0.25, 0.75);
                    const double sign_shift = (u == 1.0) ? -1.0 : 1.0;   // (-1)^u
                    const double sign_peak = (u == 1.0) ? 1.0 : -1.0;    // (-1)^(1-u)
                    fill([&](double t) {
                        return 4.0 * t + 1.8 * sign_shift +
                               sign_peak * (1.0 / std::sqrt(0.02 * kPi)) *
                                   std::exp(-50.0 * (t - v) * (t - v));
                    }, chol_main);
                }
                break;
            case 7:
                if (!outlier) fill([](double t) { return 4.0 * t; }, chol_main);
                else shared_outlier(7);
                break;
            case 8:
                if (!outlier)
                    fill([](double t) { return 2.0 * std::sin(15.0 * kPi * t); }, chol_main);
                else
                    fill([](double t) { return 2.0 * std::sin(15.0 * kPi * t + 2.0); }, chol_main);
                break;
            case 9:
                if (!outlier) {
                    const double a1 = cs.uniform(3.0, 8.0);
                    const double a2 = cs.uniform(3.0, 8.0);
                    fill([&](double t) {
                        const double theta = 2.0 * kPi * t;
                        return a1 * std::sin(theta) + a2 * std::cos(theta);
                    }, chol_main);
                } else {
                    const double u = cs.bernoulli() ? 1.0 : 0.0;
                    const double b1 = cs.uniform(1.5, 2.5);
                    const double b2 = cs.uniform(1.5, 2.5);
                    const double c1 = cs.uniform(9.0, 10.5);
                    const double c2 = cs.uniform(9.0, 10.5);
                    fill([&](double t) {
                        const double theta = 2.0 * kPi * t;
                        return (b1 * std::sin(theta) + b2 * std::cos(theta)) * (1.0 - u) +
                               (c1 * std::sin(theta) + c2 * std::cos(theta)) * u;
                    }, chol_main);
                }
                break;
            case 10:
                if (!outlier) fill([](double t) { return 4.0 * t; }, chol_main);
                else {
                    static const int models[4] = {1, 2, 5, 7};
                    shared_outlier(models[cs.uniform_int(4)]);
                }
                break;
            case 11: {
                // x_t = t/m with t the 1-based grid index; both models share the
                // 0.05*t trend, the index scale matching the printed t = 1..500.
                if (!outlier) {
                    const double a = cs.normal(5.0, 4.0);
                    for (std::size_t j = 0; j < msz; ++j) {
                        const double x = grid[j];
                        const double t_index = static_cast<double>(j + 1);
                        row[static_cast<Eigen::Index>(j)] = a + 0.05 * t_index + std::sin(kPi * x * x);
                    }
                } else {
                    const double b = cs.normal(5.0, 3.0);
                    for (std::size_t j = 0; j < msz; ++j) {
                        const double x = grid[j];
                        const double t_index = static_cast<double>(j + 1);
                        row[static_cast<Eigen::Index>(j)] = b + 0.05 * t_index + std::cos(20.0 * x);
                    }
                }
                break;
            }
            case 12:
                fill([](double) { return 0.0; }, outlier ? chol_out : chol_main);
                break;
            case 13:
                if (!outlier)
                    fill([](double t) { return 2.0 * std::sin(15.0 * kPi * t); }, chol_main);
                else
                    fill([](double t) { return 2.0 * std::sin(15.0 * kPi * t + 4.0); }, chol_main);
                break;
            case 14:
                fill([](double t) { return 0.1 + std::atan(t); }, outlier ? chol_out : chol_main);
                break;
            case 15:
                fill([](double t) { return 30.0 * t * std::pow(1.0 - t, 1.5); },
                     outlier ? chol_out : chol_main);
                break;
            case 16:
                if (!outlier) fill([](double) { return 0.0; }, chol_main);
                else {
                    const double theta = cs.uniform(0.25, 0.5);
                    fill([&](double t) { return 0.1 * std::sin(40.0 * (t + theta) * kPi); }, chol_out);
                }
                break;
            case 17:
                if (!outlier) {
                    const double A = cs.normal(0.0, 2.0);
                    const double B = cs.exponential();
                    fill([&](double t) { return A + B * std::atan(t); }, chol_main);
                } else {
                    fill([](double t) { return 1.0 - 2.0 * std::atan(t); }, chol_out);
                }
                break;
            case 18:
                if (!outlier) fill([](double) { return 0.0; }, chol_main);
                else {
                    fill([](double t) {
                        const double step = t <= 0.5 ? 0.5 : -0.5;
                        return step + std::log(2.0) * std::atan(t);
                    }, chol_out);
                }
                break;
            case 19: {
                double z1 = cs.normal(), z2 = cs.normal();
                double norm = std::hypot(z1, z2);
                while (norm == 0.0) {
                    z1 = cs.normal();
                    z2 = cs.normal();
                    norm = std::hypot(z1, z2);
                }
                Vector coeffs = Vector::Zero(25);
                coeffs[0] = z1 / norm;
                coeffs[1] = z2 / norm;
                const Vector rotated = (outlier ? rot_out : rot_in) * coeffs;
                Vector curve = basis * rotated;
                // The white-noise step belongs to the outlier construction; the
                // main curves stay on their noiseless low-dimensional family.
                if (outlier)
                    for (Eigen::Index j = 0; j < curve.size(); ++j)
                        curve[j] += 0.3 * cs.normal();
                row = curve;
                break;
            }
        }
        values.row(i) = row.transpose();
    }

    return FunctionalSample{std::move(grid), std::move(values), std::move(labels)};
}

}  // namespace ehy
