#include "ehy/robust.hpp"

#include <algorithm>
#include <boost/math/distributions/chi_squared.hpp>
#include <cmath>
#include <iostream>

namespace ehy {

double median(std::vector<double> v) {
    if (v.empty()) throw validation_error("median of empty vector");
    const std::size_t n = v.size();
    const std::size_t mid = n / 2;
    std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
    double med = v[mid];
    if (n % 2 == 0) {
        const double lower = *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid));
        med = 0.5 * (med + lower);
    }
    return med;
}

double mad(const std::vector<double>& v) {
    if (v.size() < 2) throw validation_error("mad needs at least two values");
    const double med = median(v);
    std::vector<double> dev(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) dev[i] = std::abs(v[i] - med);
    return median(std::move(dev));
}

double comedian(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size()) throw validation_error("comedian length mismatch");
    if (x.size() < 2) throw validation_error("comedian needs at least two values");
    const double mx = median(x);
    const double my = median(y);
    std::vector<double> prod(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) prod[i] = (x[i] - mx) * (y[i] - my);
    return median(std::move(prod));
}

double quantile(std::vector<double> v, double q) {
    if (v.empty()) throw validation_error("quantile of empty vector");
    q = std::clamp(q, 0.0, 1.0);
    std::sort(v.begin(), v.end());
    const double idx = q * static_cast<double>(v.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(std::floor(idx));
    const std::size_t hi = static_cast<std::size_t>(std::ceil(idx));
    const double frac = idx - static_cast<double>(lo);
    return v[lo] + frac * (v[hi] - v[lo]);
}

double chi_squared_median(int p) {
    return boost::math::quantile(boost::math::chi_squared(static_cast<double>(p)), 0.5);
}

namespace {

double chi_squared_quantile(int p, double q) {
    return boost::math::quantile(boost::math::chi_squared(static_cast<double>(p)), q);
}

}  // namespace

namespace {

std::vector<double> column(const Matrix& m, Eigen::Index j) {
    std::vector<double> out(static_cast<std::size_t>(m.rows()));
    for (Eigen::Index i = 0; i < m.rows(); ++i) out[static_cast<std::size_t>(i)] = m(i, j);
    return out;
}

// One orthogonalization sweep: MAD-standardize columns, eigendecompose the
// comedian matrix of the standardized data, rotate. Returns the rotated data Z
// and the back-transformation A = D * E, so X = Z * A^T.
struct Sweep {
    Matrix z;
    Matrix back;  // A = D * E
};

Sweep sweep(const Matrix& x) {
    const Eigen::Index p = x.cols();

    Vector scale(p);
    for (Eigen::Index j = 0; j < p; ++j) {
        const double s = mad(column(x, j));
        if (s == 0.0)
            throw validation_error("degenerate feature: column " + std::to_string(j) +
                                   " has zero MAD");
        scale[j] = s;
    }
    Matrix y = x * scale.cwiseInverse().asDiagonal();

    Matrix delta(p, p);
    std::vector<std::vector<double>> cols(static_cast<std::size_t>(p));
    for (Eigen::Index j = 0; j < p; ++j) cols[static_cast<std::size_t>(j)] = column(y, j);
    for (Eigen::Index j = 0; j < p; ++j)
        for (Eigen::Index k = j; k < p; ++k) {
            const double c = comedian(cols[static_cast<std::size_t>(j)], cols[static_cast<std::size_t>(k)]);
            delta(j, k) = c;
            delta(k, j) = c;
        }

    Eigen::SelfAdjointEigenSolver<Matrix> eig(delta);
    if (eig.info() != Eigen::Success)
        throw std::runtime_error("comedian matrix eigendecomposition failed");

    Sweep out;
    out.z = y * eig.eigenvectors();
    out.back = scale.asDiagonal() * eig.eigenvectors();
    return out;
}

// Squared Mahalanobis distances against (location, scatter), inverted through
// an eigendecomposition with a relative eigenvalue floor, then rescaled so the
// median matches the chi-squared median.
Vector corrected_distances(const Matrix& data, const Vector& location, const Matrix& scatter) {
    const Eigen::Index n = data.rows();
    const Eigen::Index p = data.cols();

    Eigen::SelfAdjointEigenSolver<Matrix> eig(scatter);
    Vector evals = eig.eigenvalues();
    const double floor = 1e-12 * evals.maxCoeff();
    bool repaired = false;
    for (Eigen::Index j = 0; j < p; ++j) {
        if (evals[j] < floor) {
            evals[j] = floor;
            repaired = true;
        }
    }
    if (repaired)
        std::cerr << "warning: near-singular comedian scatter, eigenvalues floored\n";
    Matrix inv = eig.eigenvectors() * evals.cwiseInverse().asDiagonal() *
                 eig.eigenvectors().transpose();

    Vector distances(n);
    Matrix centered = data.rowwise() - location.transpose();
#pragma omp parallel for schedule(static)
    for (Eigen::Index i = 0; i < n; ++i)
        distances[i] = centered.row(i) * inv * centered.row(i).transpose();

    std::vector<double> d(distances.data(), distances.data() + n);
    const double med = median(d);
    if (med <= 0.0) throw validation_error("degenerate distances: non-positive median");
    distances *= chi_squared_median(static_cast<int>(p)) / med;
    return distances;
}

}  // namespace

RobustFit com_fit(const Matrix& data, const ComConfig& config) {
    const Eigen::Index n = data.rows();
    const Eigen::Index p = data.cols();
    if (p < 1 || n <= p)
        throw validation_error("com_fit needs n > p >= 1, got n=" + std::to_string(n) +
                               " p=" + std::to_string(p));
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < p; ++j)
            if (!std::isfinite(data(i, j)))
                throw validation_error("non-finite entry at (" + std::to_string(i) + "," +
                                       std::to_string(j) + ")");

    Matrix z = data;
    Matrix back = Matrix::Identity(p, p);
    const int sweeps = std::max(1, config.orthogonalization_sweeps);
    for (int s = 0; s < sweeps; ++s) {
        Sweep sw = sweep(z);
        z = std::move(sw.z);
        back = back * sw.back;
    }

    Vector center(p), spread(p);
    for (Eigen::Index j = 0; j < p; ++j) {
        auto col = column(z, j);
        center[j] = median(col);
        const double s = mad(col);
        spread[j] = s * s;
    }

    RobustFit fit;
    fit.location = back * center;
    fit.scatter = back * spread.asDiagonal() * back.transpose();
    fit.scatter = 0.5 * (fit.scatter + fit.scatter.transpose());  // enforce symmetry
    fit.distances = corrected_distances(data, fit.location, fit.scatter);

    // Reweighting: the raw MAD-based scale is inflated along contaminated
    // directions (each sweep remeasures spread with the outliers still in).
    // Classical moments of the retained rows restore efficiency; iterate until
    // the retained set is stable so far-out rows excluded late in the process
    // stop influencing the scatter at all.
    if (config.reweight) {
        const double keep = chi_squared_quantile(static_cast<int>(p),
                                                 config.reweight_quantile);
        std::vector<Eigen::Index> previous;
        for (int iter = 0; iter < 50; ++iter) {
            std::vector<Eigen::Index> retained;
            for (Eigen::Index i = 0; i < n; ++i)
                if (fit.distances[i] <= keep) retained.push_back(i);
            if (static_cast<Eigen::Index>(retained.size()) <= p + 1 || retained == previous)
                break;
            Matrix kept(static_cast<Eigen::Index>(retained.size()), p);
            for (std::size_t k = 0; k < retained.size(); ++k)
                kept.row(static_cast<Eigen::Index>(k)) = data.row(retained[k]);
            Vector mean = kept.colwise().mean();
            Matrix centered = kept.rowwise() - mean.transpose();
            Matrix cov = (centered.transpose() * centered) /
                         static_cast<double>(kept.rows() - 1);
            fit.location = mean;
            fit.scatter = 0.5 * (cov + cov.transpose());
            fit.distances = corrected_distances(data, fit.location, fit.scatter);
            previous = std::move(retained);
        }
    }

    fit.cutoff = com_cutoff(fit.distances, config);
    return fit;
}

double com_cutoff(const Vector& distances, const ComConfig& config) {
    if (distances.size() < 4) throw validation_error("cutoff needs at least 4 distances");
    std::vector<double> d(distances.data(), distances.data() + distances.size());
    const double q1 = quantile(d, 0.25);
    const double q3 = quantile(d, 0.75);
    return q3 + config.cutoff_whisker * (q3 - q1);
}

DetectionResult com_detect(const Matrix& data, const ComConfig& config) {
    RobustFit fit = com_fit(data, config);
    DetectionResult result;
    result.scores = fit.distances;
    result.cutoff = fit.cutoff;
    result.flags.resize(static_cast<std::size_t>(fit.distances.size()));
    for (Eigen::Index i = 0; i < fit.distances.size(); ++i)
        result.flags[static_cast<std::size_t>(i)] = fit.distances[i] > fit.cutoff;
    return result;
}

}  // namespace ehy
