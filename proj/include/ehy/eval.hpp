#pragma once

#include "ehy/core.hpp"
#include "ehy/dgp.hpp"
#include "ehy/ehyout.hpp"

namespace ehy {

struct Confusion {
    int tp = 0, fp = 0, tn = 0, fn = 0;
};

Confusion confusion(const std::vector<bool>& flags, const std::vector<bool>& labels);

/// Matthews correlation coefficient; 0 when any denominator factor vanishes.
double mcc(const Confusion& c);

/// (TPR, FPR); 0 when the corresponding class is empty.
std::pair<double, double> rates(const Confusion& c);

/// Area under the ROC curve via the tie-aware Mann-Whitney statistic.
double auc(const Vector& scores, const std::vector<bool>& labels);

/// One row of the benchmark summary: per (dgp, alpha), median and sample sd of
/// each metric over replications, plus mean metrics and mean detection time.
struct BenchRow {
    int dgp = 0;
    double alpha = 0.0;
    int reps = 0;
    int failed_reps = 0;
    double tpr_median = 0, tpr_sd = 0;
    double fpr_median = 0, fpr_sd = 0;
    double mcc_median = 0, mcc_sd = 0;
    double auc_median = 0, auc_sd = 0;
    double mcc_mean = 0;
    double mean_time_sec = 0;
};

struct EvalSummary {
    std::vector<BenchRow> rows;
};

/// Runs EHyOut on `reps` generated samples per (dgp, alpha) with seeds
/// seed0 + rep. Timing covers only the detection call. Per-rep failures are
/// recorded in failed_reps, not fatal.
EvalSummary run_benchmark(const std::vector<int>& dgp_ids, const std::vector<double>& alphas,
                          int reps, std::uint64_t seed0, const EhyoutConfig& config = {},
                          int m = 0, int n = 200);

void save_summary_csv(const EvalSummary& summary, const std::string& path);
std::string format_summary_table(const EvalSummary& summary);

}  // namespace ehy
