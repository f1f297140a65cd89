#include "ehy/core.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace ehy {

Grid::Grid(std::vector<double> points) : points_(std::move(points)) {
    const std::size_t m = points_.size();
    if (m < 4)
        throw validation_error("grid needs at least 4 points, got " + std::to_string(m));
    for (std::size_t j = 0; j < m; ++j) {
        if (!std::isfinite(points_[j]))
            throw validation_error("grid point " + std::to_string(j) + " is not finite");
        if (j > 0 && points_[j] <= points_[j - 1])
            throw validation_error("grid not strictly increasing at index " + std::to_string(j));
    }
    // Trapezoid weights: interior points get half the span of their neighbors,
    // endpoints get their one-sided half-interval.
    weights_.resize(m);
    weights_[0] = 0.5 * (points_[1] - points_[0]);
    weights_[m - 1] = 0.5 * (points_[m - 1] - points_[m - 2]);
    for (std::size_t j = 1; j + 1 < m; ++j)
        weights_[j] = 0.5 * (points_[j + 1] - points_[j - 1]);
}

Grid Grid::equispaced01(std::size_t m) {
    std::vector<double> pts(m);
    for (std::size_t j = 0; j < m; ++j)
        pts[j] = static_cast<double>(j) / static_cast<double>(m - 1);
    return Grid(std::move(pts));
}

void validate(const FunctionalSample& sample) {
    const auto n = sample.values.rows();
    const auto m = sample.values.cols();
    if (n < 2) throw validation_error("need at least two curves, got " + std::to_string(n));
    if (static_cast<std::size_t>(m) != sample.grid.size())
        throw validation_error("values have " + std::to_string(m) + " columns but grid has " +
                               std::to_string(sample.grid.size()) + " points");
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < m; ++j)
            if (!std::isfinite(sample.values(i, j)))
                throw validation_error("non-finite value at curve " + std::to_string(i) +
                                       ", point " + std::to_string(j));
    if (sample.labels && sample.labels->size() != static_cast<std::size_t>(n))
        throw validation_error("labels have length " + std::to_string(sample.labels->size()) +
                               " but sample has " + std::to_string(n) + " curves");
}

namespace {

std::vector<double> parse_row(const std::string& line, std::size_t row_index) {
    std::vector<double> out;
    const char* p = line.data();
    const char* end = p + line.size();
    while (p < end) {
        while (p < end && (*p == ' ' || *p == '\t')) ++p;
        const char* field_end = p;
        while (field_end < end && *field_end != ',') ++field_end;
        double v;
        auto [ptr, ec] = std::from_chars(p, field_end, v);
        // from_chars leaves trailing spaces; tolerate them, nothing else.
        while (ptr < field_end && (*ptr == ' ' || *ptr == '\t' || *ptr == '\r')) ++ptr;
        if (ec != std::errc{} || ptr != field_end)
            throw validation_error("non-numeric cell in row " + std::to_string(row_index) +
                                   ": '" + std::string(p, field_end) + "'");
        out.push_back(v);
        p = field_end < end ? field_end + 1 : end;
    }
    return out;
}

}  // namespace

FunctionalSample load_sample(const std::string& path, bool has_header) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open file: " + path);

    std::vector<std::vector<double>> rows;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        rows.push_back(parse_row(line, lineno));
        ++lineno;
    }
    if (rows.empty()) throw validation_error("empty file: " + path);

    std::vector<double> grid_pts;
    std::size_t first_data = 0;
    if (has_header) {
        grid_pts = rows[0];
        first_data = 1;
        if (rows.size() < 2) throw validation_error("header-only file: " + path);
    }
    const std::size_t m = rows[first_data].size();
    for (std::size_t r = first_data; r < rows.size(); ++r)
        if (rows[r].size() != m)
            throw validation_error("ragged row " + std::to_string(r) + ": expected " +
                                   std::to_string(m) + " fields, got " +
                                   std::to_string(rows[r].size()));

    Grid grid = has_header ? Grid(std::move(grid_pts)) : Grid::equispaced01(m);

    const std::size_t n = rows.size() - first_data;
    Matrix values(n, m);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < m; ++j)
            values(i, j) = rows[first_data + i][j];

    FunctionalSample sample{std::move(grid), std::move(values), std::nullopt};
    validate(sample);
    return sample;
}

std::vector<bool> load_labels(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    std::vector<bool> labels;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto fields = parse_row(line, lineno++);
        if (fields.size() != 1)
            throw validation_error("label file must have one column");
        if (fields[0] != 0.0 && fields[0] != 1.0)
            throw validation_error("label must be 0 or 1, got " + std::to_string(fields[0]));
        labels.push_back(fields[0] == 1.0);
    }
    return labels;
}

namespace {

void write_number(std::ostream& os, double v) {
    std::ostringstream ss;
    ss.precision(17);
    ss << v;
    os << ss.str();
}

}  // namespace

void save_sample(const FunctionalSample& sample, const std::string& path, bool write_header) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    const auto m = sample.grid.size();
    if (write_header) {
        for (std::size_t j = 0; j < m; ++j) {
            if (j) out << ',';
            write_number(out, sample.grid[j]);
        }
        out << '\n';
    }
    for (Eigen::Index i = 0; i < sample.values.rows(); ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            if (j) out << ',';
            write_number(out, sample.values(i, static_cast<Eigen::Index>(j)));
        }
        out << '\n';
    }
}

void save_labels(const std::vector<bool>& labels, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    for (bool b : labels) out << (b ? 1 : 0) << '\n';
}

}  // namespace ehy
