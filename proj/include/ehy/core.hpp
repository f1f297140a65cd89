#pragma once

#include <Eigen/Dense>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ehy {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Thrown when an input violates a documented precondition or invariant.
class validation_error : public std::runtime_error {
public:
    explicit validation_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Strictly increasing abscissae t_1 < ... < t_m on a compact interval.
class Grid {
public:
    explicit Grid(std::vector<double> points);

    /// m equispaced points on [0,1] inclusive of both endpoints.
    static Grid equispaced01(std::size_t m);

    std::size_t size() const { return points_.size(); }
    double operator[](std::size_t j) const { return points_[j]; }
    const std::vector<double>& points() const { return points_; }
    double length() const { return points_.back() - points_.front(); }

    /// Trapezoid quadrature weight of each grid point; the weights sum to length().
    const std::vector<double>& weights() const { return weights_; }

private:
    std::vector<double> points_;
    std::vector<double> weights_;
};

/// n curves observed on a shared grid, with optional ground-truth outlier labels.
struct FunctionalSample {
    Grid grid;
    Matrix values;  // n x m, row i = curve i
    std::optional<std::vector<bool>> labels;  // true = outlier

    std::size_t n_curves() const { return static_cast<std::size_t>(values.rows()); }
    std::size_t n_points() const { return static_cast<std::size_t>(values.cols()); }
};

/// Scores are squared robust distances (higher = more outlying);
/// flags[i] == (scores[i] > cutoff).
struct DetectionResult {
    Vector scores;
    std::vector<bool> flags;
    double cutoff = 0.0;
};

/// Checks every FunctionalSample invariant; throws validation_error naming
/// the first violation (with its index location).
void validate(const FunctionalSample& sample);

/// Reads a CSV with one curve per row. With has_header, the first row gives
/// the grid abscissae; otherwise the grid defaults to equispaced on [0,1].
FunctionalSample load_sample(const std::string& path, bool has_header);

/// Reads a single-column file of 0/1 labels.
std::vector<bool> load_labels(const std::string& path);

void save_sample(const FunctionalSample& sample, const std::string& path,
                 bool write_header = true);
void save_labels(const std::vector<bool>& labels, const std::string& path);

}  // namespace ehy
