#pragma once

#include "ehy/core.hpp"
#include "ehy/indices.hpp"
#include "ehy/robust.hpp"

namespace ehy {

/// Which index columns feed the multivariate detector.
enum class FeatureSet {
    d0_d1_d2,  // all six columns (default)
    d0_only,
    d1_d2_only,
    d0_d1,
    d0_d2,
    d1_only,
    d2_only,
};

FeatureSet feature_set_from_string(const std::string& name);
std::string to_string(FeatureSet fs);

struct EhyoutConfig {
    FeatureSet feature_set = FeatureSet::d0_d1_d2;
    ComConfig robust;
};

/// Columns of the n x 6 index matrix selected by the feature set (p in {2,4,6}).
Matrix select_features(const IndexMatrix& features, FeatureSet fs);

/// Full pipeline: spline smoothing, area-index features on the curves and
/// their first two derivatives, comedian detection on the selected columns.
DetectionResult ehyout(const FunctionalSample& sample, const EhyoutConfig& config = {});

}  // namespace ehy
