#include "ehy/eval.hpp"

#include "ehy/robust.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>

namespace ehy {

Confusion confusion(const std::vector<bool>& flags, const std::vector<bool>& labels) {
    if (flags.size() != labels.size())
        throw validation_error("flags/labels length mismatch");
    Confusion c;
    for (std::size_t i = 0; i < flags.size(); ++i) {
        if (labels[i]) flags[i] ? ++c.tp : ++c.fn;
        else flags[i] ? ++c.fp : ++c.tn;
    }
    return c;
}

double mcc(const Confusion& c) {
    const double tp = c.tp, fp = c.fp, tn = c.tn, fn = c.fn;
    const double denom = (tp + fp) * (tp + fn) * (tn + fp) * (tn + fn);
    if (denom == 0.0) return 0.0;
    return (tp * tn - fp * fn) / std::sqrt(denom);
}

std::pair<double, double> rates(const Confusion& c) {
    const double tpr = (c.tp + c.fn) > 0 ? static_cast<double>(c.tp) / (c.tp + c.fn) : 0.0;
    const double fpr = (c.fp + c.tn) > 0 ? static_cast<double>(c.fp) / (c.fp + c.tn) : 0.0;
    return {tpr, fpr};
}

double auc(const Vector& scores, const std::vector<bool>& labels) {
    if (static_cast<std::size_t>(scores.size()) != labels.size())
        throw validation_error("scores/labels length mismatch");
    const std::size_t n = labels.size();
    std::size_t n_pos = 0;
    for (bool b : labels) n_pos += b ? 1 : 0;
    const std::size_t n_neg = n - n_pos;
    if (n_pos == 0 || n_neg == 0)
        throw validation_error("auc needs both classes present");

    // Rank-sum with average ranks for ties.
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(),
              [&](std::size_t a, std::size_t b) { return scores[static_cast<Eigen::Index>(a)] <
                                                         scores[static_cast<Eigen::Index>(b)]; });
    double rank_sum_pos = 0.0;
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && scores[static_cast<Eigen::Index>(idx[j + 1])] ==
                                scores[static_cast<Eigen::Index>(idx[i])])
            ++j;
        const double avg_rank = 0.5 * static_cast<double>(i + j) + 1.0;  // 1-based
        for (std::size_t k = i; k <= j; ++k)
            if (labels[idx[k]]) rank_sum_pos += avg_rank;
        i = j + 1;
    }
    const double u = rank_sum_pos - 0.5 * static_cast<double>(n_pos) * (n_pos + 1);
    return u / (static_cast<double>(n_pos) * static_cast<double>(n_neg));
}

namespace {

double median_of(std::vector<double> v) { return median(std::move(v)); }

double sample_sd(const std::vector<double>& v) {
    if (v.size() < 2) return 0.0;
    const double mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
    double ss = 0.0;
    for (double x : v) ss += (x - mean) * (x - mean);
    return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

}  // namespace

EvalSummary run_benchmark(const std::vector<int>& dgp_ids, const std::vector<double>& alphas,
                          int reps, std::uint64_t seed0, const EhyoutConfig& config,
                          int m, int n) {
    if (reps < 1) throw validation_error("reps must be at least 1");
    EvalSummary summary;
    for (int dgp : dgp_ids) {
        for (double alpha : alphas) {
            std::vector<double> tprs, fprs, mccs, aucs, times;
            int failed = 0;
            for (int rep = 0; rep < reps; ++rep) {
                try {
                    DgpSpec spec;
                    spec.id = dgp;
                    spec.n = n;
                    spec.m = m;
                    spec.alpha = alpha;
                    spec.seed = seed0 + static_cast<std::uint64_t>(rep);
                    const FunctionalSample sample = generate(spec);

                    const auto t0 = std::chrono::steady_clock::now();
                    const DetectionResult result = ehyout(sample, config);
                    const auto t1 = std::chrono::steady_clock::now();

                    const Confusion c = confusion(result.flags, *sample.labels);
                    const auto [tpr, fpr] = rates(c);
                    tprs.push_back(tpr);
                    fprs.push_back(fpr);
                    mccs.push_back(mcc(c));
                    aucs.push_back(auc(result.scores, *sample.labels));
                    times.push_back(std::chrono::duration<double>(t1 - t0).count());
                } catch (const std::exception& e) {
                    ++failed;
                    std::cerr << "warning: dgp " << dgp << " alpha " << alpha << " rep " << rep
                              << " failed: " << e.what() << '\n';
                }
            }
            BenchRow row;
            row.dgp = dgp;
            row.alpha = alpha;
            row.reps = reps;
            row.failed_reps = failed;
            if (!tprs.empty()) {
                row.tpr_median = median_of(tprs);
                row.tpr_sd = sample_sd(tprs);
                row.fpr_median = median_of(fprs);
                row.fpr_sd = sample_sd(fprs);
                row.mcc_median = median_of(mccs);
                row.mcc_sd = sample_sd(mccs);
                row.auc_median = median_of(aucs);
                row.auc_sd = sample_sd(aucs);
                row.mcc_mean = std::accumulate(mccs.begin(), mccs.end(), 0.0) /
                               static_cast<double>(mccs.size());
                row.mean_time_sec = std::accumulate(times.begin(), times.end(), 0.0) /
                                    static_cast<double>(times.size());
            }
            summary.rows.push_back(row);
        }
    }
    return summary;
}

void save_summary_csv(const EvalSummary& summary, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    out << "dgp,alpha,reps,failed_reps,tpr_median,tpr_sd,fpr_median,fpr_sd,"
           "mcc_median,mcc_sd,auc_median,auc_sd,mcc_mean,mean_time_sec\n";
    out.precision(6);
    out << std::fixed;
    for (const auto& r : summary.rows) {
        out << r.dgp << ',' << r.alpha << ',' << r.reps << ',' << r.failed_reps << ','
            << r.tpr_median << ',' << r.tpr_sd << ',' << r.fpr_median << ',' << r.fpr_sd << ','
            << r.mcc_median << ',' << r.mcc_sd << ',' << r.auc_median << ',' << r.auc_sd << ','
            << r.mcc_mean << ',' << r.mean_time_sec << '\n';
    }
}

std::string format_summary_table(const EvalSummary& summary) {
    std::ostringstream os;
    os.precision(3);
    os << std::fixed;
    os << "dgp  alpha   TPR (sd)        FPR (sd)        MCC (sd)        AUC (sd)        time[s]\n";
    for (const auto& r : summary.rows) {
        os << r.dgp << (r.dgp < 10 ? "    " : "   ") << r.alpha << "   "
           << r.tpr_median << " (" << r.tpr_sd << ")   "
           << r.fpr_median << " (" << r.fpr_sd << ")   "
           << r.mcc_median << " (" << r.mcc_sd << ")   "
           << r.auc_median << " (" << r.auc_sd << ")   "
           << r.mean_time_sec;
        if (r.failed_reps > 0) os << "   [" << r.failed_reps << " failed]";
        os << '\n';
    }
    return os.str();
}

}  // namespace ehy
