#include "ehy/ehyout.hpp"

#include "ehy/spline.hpp"

#include <array>

namespace ehy {

namespace {

std::vector<int> selected_columns(FeatureSet fs) {
    switch (fs) {
        case FeatureSet::d0_d1_d2: return {0, 1, 2, 3, 4, 5};
        case FeatureSet::d0_only: return {0, 1};
        case FeatureSet::d1_d2_only: return {2, 3, 4, 5};
        case FeatureSet::d0_d1: return {0, 1, 2, 3};
        case FeatureSet::d0_d2: return {0, 1, 4, 5};
        case FeatureSet::d1_only: return {2, 3};
        case FeatureSet::d2_only: return {4, 5};
    }
    throw validation_error("unknown feature set");
}

}  // namespace

FeatureSet feature_set_from_string(const std::string& name) {
    if (name == "d0_d1_d2") return FeatureSet::d0_d1_d2;
    if (name == "d0_only") return FeatureSet::d0_only;
    if (name == "d1_d2_only") return FeatureSet::d1_d2_only;
    if (name == "d0_d1") return FeatureSet::d0_d1;
    if (name == "d0_d2") return FeatureSet::d0_d2;
    if (name == "d1_only") return FeatureSet::d1_only;
    if (name == "d2_only") return FeatureSet::d2_only;
    throw validation_error("unknown feature set: " + name);
}

std::string to_string(FeatureSet fs) {
    switch (fs) {
        case FeatureSet::d0_d1_d2: return "d0_d1_d2";
        case FeatureSet::d0_only: return "d0_only";
        case FeatureSet::d1_d2_only: return "d1_d2_only";
        case FeatureSet::d0_d1: return "d0_d1";
        case FeatureSet::d0_d2: return "d0_d2";
        case FeatureSet::d1_only: return "d1_only";
        case FeatureSet::d2_only: return "d2_only";
    }
    return "?";
}

Matrix select_features(const IndexMatrix& features, FeatureSet fs) {
    const auto cols = selected_columns(fs);
    Matrix out(features.rows(), static_cast<Eigen::Index>(cols.size()));
    for (std::size_t c = 0; c < cols.size(); ++c)
        out.col(static_cast<Eigen::Index>(c)) = features.col(cols[c]);
    return out;
}

DetectionResult ehyout(const FunctionalSample& sample, const EhyoutConfig& config) {
    validate(sample);
    const SmoothedTriple triple = smooth_sample(sample);
    const IndexMatrix features = feature_matrix(triple, sample.grid);
    const Matrix selected = select_features(features, config.feature_set);
    return com_detect(selected, config.robust);
}

}  // namespace ehy
