#pragma once

#include "ehy/core.hpp"

namespace ehy {

/// Robust location/scatter fit with squared robust Mahalanobis distances.
struct RobustFit {
    Vector location;    // p
    Matrix scatter;     // p x p, symmetric PSD
    Vector distances;   // n squared robust distances, median-corrected
    double cutoff = 0.0;
};

struct ComConfig {
    int orthogonalization_sweeps = 2;
    double cutoff_whisker = 1.5;  // boxplot constant: Q3 + whisker * IQR
    // Reweighting: refine the raw fit with classical moments of the rows whose
    // corrected squared distance falls below the chi-squared quantile given
    // here. The raw MAD-based scale is inflated along contaminated directions;
    // the reweighted scatter restores efficiency (standard in the
    // orthogonalized-estimator family). Set reweight=false for the raw fit.
    bool reweight = true;
    double reweight_quantile = 0.975;
};

double median(std::vector<double> v);
double mad(const std::vector<double>& v);
double comedian(const std::vector<double>& x, const std::vector<double>& y);

/// Linearly-interpolated empirical quantile (type-7 convention), q in [0,1].
double quantile(std::vector<double> v, double q);

/// Median of the chi-squared distribution with p degrees of freedom.
double chi_squared_median(int p);

/// Orthogonalized comedian estimator of location and scatter, with squared
/// robust distances corrected so their median matches the chi-squared median.
RobustFit com_fit(const Matrix& data, const ComConfig& config = {});

/// Boxplot-type cutoff Q3 + 1.5*IQR on the corrected squared distances.
double com_cutoff(const Vector& distances, const ComConfig& config = {});

/// Full detector: corrected squared distances scored and thresholded.
DetectionResult com_detect(const Matrix& data, const ComConfig& config = {});

}  // namespace ehy
