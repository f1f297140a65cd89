#include "ehy/indices.hpp"

#include <cmath>

namespace ehy {

namespace {

void check_inputs(const Matrix& values, const Grid& grid) {
    if (values.rows() < 2) throw validation_error("need at least two curves");
    if (static_cast<std::size_t>(values.cols()) != grid.size())
        throw validation_error("values/grid size mismatch");
}

}  // namespace

std::vector<IndexPair> modified_indices(const Matrix& values, const Grid& grid) {
    check_inputs(values, grid);
    const Eigen::Index n = values.rows();
    const Eigen::Index m = values.cols();
    const auto& w = grid.weights();
    const double total = grid.length() * static_cast<double>(n);

    std::vector<IndexPair> out(static_cast<std::size_t>(n));
#pragma omp parallel for schedule(static)
    for (Eigen::Index r = 0; r < n; ++r) {
        double above = 0.0, below = 0.0;
        for (Eigen::Index i = 0; i < n; ++i) {
            for (Eigen::Index j = 0; j < m; ++j) {
                const double xi = values(i, j);
                const double x = values(r, j);
                if (xi >= x) above += w[static_cast<std::size_t>(j)];
                if (xi <= x) below += w[static_cast<std::size_t>(j)];
            }
        }
        out[static_cast<std::size_t>(r)] = {1.0 - above / total, below / total};
    }
    return out;
}

std::vector<IndexPair> area_indices(const Matrix& values, const Grid& grid) {
    check_inputs(values, grid);
    const Eigen::Index n = values.rows();
    const Eigen::Index m = values.cols();
    const auto& w = grid.weights();

    std::vector<IndexPair> out(static_cast<std::size_t>(n));
#pragma omp parallel for schedule(static)
    for (Eigen::Index r = 0; r < n; ++r) {
        double epi = 0.0, hypo = 0.0;
        for (Eigen::Index i = 0; i < n; ++i) {
            for (Eigen::Index j = 0; j < m; ++j) {
                const double diff = values(i, j) - values(r, j);
                if (diff > 0.0)
                    epi += w[static_cast<std::size_t>(j)] * diff;
                else
                    hypo -= w[static_cast<std::size_t>(j)] * diff;
            }
        }
        out[static_cast<std::size_t>(r)] = {epi, hypo};
    }
    return out;
}

bool reflection_check(const Matrix& values, const Grid& grid) {
    const auto direct = area_indices(values, grid);
    const auto negated = area_indices(-values, grid);
    for (std::size_t r = 0; r < direct.size(); ++r) {
        const double scale = std::max({1.0, std::abs(direct[r].hypograph),
                                       std::abs(negated[r].epigraph)});
        if (std::abs(direct[r].hypograph - negated[r].epigraph) > 1e-12 * scale) return false;
    }
    return true;
}

IndexMatrix feature_matrix(const SmoothedTriple& triple, const Grid& grid) {
    const Eigen::Index n = triple.d0.rows();
    IndexMatrix features(n, 6);
    const Matrix* layers[3] = {&triple.d0, &triple.d1, &triple.d2};
    for (int layer = 0; layer < 3; ++layer) {
        const auto pairs = area_indices(*layers[layer], grid);
        for (Eigen::Index i = 0; i < n; ++i) {
            features(i, 2 * layer) = pairs[static_cast<std::size_t>(i)].epigraph;
            features(i, 2 * layer + 1) = pairs[static_cast<std::size_t>(i)].hypograph;
        }
    }
    return features;
}

}  // namespace ehy
