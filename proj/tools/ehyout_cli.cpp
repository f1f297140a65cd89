// Command-line front end: simulate datasets, compute index features, detect
// outliers, and run the Monte-Carlo benchmark.
//
// Exit codes: 0 success, 1 runtime failure, 2 usage error.

#include "ehy/core.hpp"
#include "ehy/dgp.hpp"
#include "ehy/ehyout.hpp"
#include "ehy/eval.hpp"
#include "ehy/indices.hpp"
#include "ehy/spline.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>

namespace {

using nlohmann::json;

// Values from a --config JSON file fill in flags the command line left unset.
void apply_config(CLI::App* cmd, const std::string& config_path) {
    if (config_path.empty()) return;
    std::ifstream in(config_path);
    if (!in) throw ehy::validation_error("cannot open config file: " + config_path);
    json cfg = json::parse(in);
    for (auto& [key, value] : cfg.items()) {
        CLI::Option* opt = cmd->get_option_no_throw("--" + key);
        if (!opt || opt->count() > 0) continue;
        std::string text = value.is_string() ? value.get<std::string>() : value.dump();
        opt->add_result(text);
        opt->run_callback();
    }
}

std::vector<int> parse_dgp_list(const std::string& text) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string token;
    while (std::getline(ss, token, ',')) {
        const auto dash = token.find('-');
        if (dash != std::string::npos && dash > 0) {
            const int lo = std::stoi(token.substr(0, dash));
            const int hi = std::stoi(token.substr(dash + 1));
            for (int v = lo; v <= hi; ++v) out.push_back(v);
        } else {
            out.push_back(std::stoi(token));
        }
    }
    for (int v : out)
        if (v < 1 || v > 19) throw ehy::validation_error("dgp id must be 1..19, got " + std::to_string(v));
    if (out.empty()) throw ehy::validation_error("empty dgp list");
    return out;
}

std::vector<double> parse_alpha_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string token;
    while (std::getline(ss, token, ',')) out.push_back(std::stod(token));
    for (double a : out)
        if (a < 0.0 || a >= 0.5) throw ehy::validation_error("alpha must be in [0, 0.5)");
    if (out.empty()) throw ehy::validation_error("empty alpha list");
    return out;
}

std::string sibling_path(const std::string& out, const std::string& suffix) {
    std::filesystem::path p(out);
    std::filesystem::path base = p.parent_path() / p.stem();
    return base.string() + suffix;
}

void require_readable(const std::string& path) {
    if (!std::filesystem::exists(path))
        throw ehy::validation_error("input file does not exist: " + path);
}

void write_scatter_svg(const std::string& path, const ehy::Matrix& features,
                       const std::vector<bool>& flags) {
    const double width = 640, height = 480, margin = 50;
    double xmin = features.col(0).minCoeff(), xmax = features.col(0).maxCoeff();
    double ymin = features.col(1).minCoeff(), ymax = features.col(1).maxCoeff();
    if (xmax == xmin) xmax = xmin + 1;
    if (ymax == ymin) ymax = ymin + 1;
    auto sx = [&](double x) { return margin + (x - xmin) / (xmax - xmin) * (width - 2 * margin); };
    auto sy = [&](double y) { return height - margin - (y - ymin) / (ymax - ymin) * (height - 2 * margin); };

    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    out << "<svg xmlns='http://www.w3.org/2000/svg' width='" << width << "' height='" << height << "'>\n";
    out << "<rect width='100%' height='100%' fill='white'/>\n";
    out << "<line x1='" << margin << "' y1='" << height - margin << "' x2='" << width - margin
        << "' y2='" << height - margin << "' stroke='black'/>\n";
    out << "<line x1='" << margin << "' y1='" << margin << "' x2='" << margin << "' y2='"
        << height - margin << "' stroke='black'/>\n";
    out << "<text x='" << width / 2 << "' y='" << height - 12 << "' text-anchor='middle'>ABEI</text>\n";
    out << "<text x='15' y='" << height / 2 << "' text-anchor='middle' transform='rotate(-90 15 "
        << height / 2 << ")'>ABHI</text>\n";
    for (Eigen::Index i = 0; i < features.rows(); ++i) {
        const bool flagged = flags[static_cast<std::size_t>(i)];
        out << "<circle cx='" << sx(features(i, 0)) << "' cy='" << sy(features(i, 1)) << "' r='"
            << (flagged ? 4 : 2.5) << "' fill='" << (flagged ? "red" : "steelblue")
            << "' fill-opacity='0.7'/>\n";
    }
    out << "</svg>\n";
}

int run(int argc, char** argv) {
    CLI::App app{"Functional outlier detection with area-based epigraph/hypograph indices"};
    app.require_subcommand(1);

    // simulate
    auto* sim = app.add_subcommand("simulate", "Generate a simulated dataset");
    int sim_dgp = 1, sim_n = 200, sim_m = 0;
    double sim_alpha = 0.1;
    std::uint64_t sim_seed = 0;
    std::string sim_out, sim_config;
    sim->add_option("--dgp", sim_dgp, "Data-generation process id (1-19)");
    sim->add_option("--n", sim_n, "Number of curves");
    sim->add_option("--m", sim_m, "Grid size (0 = per-DGP default)");
    sim->add_option("--alpha", sim_alpha, "Outlier proportion");
    sim->add_option("--seed", sim_seed, "RNG seed");
    sim->add_option("--out", sim_out, "Output CSV path")->required();
    sim->add_option("--config", sim_config, "JSON file supplying defaults for any flag");

    // indices
    auto* idx = app.add_subcommand("indices", "Compute the n x 6 index matrix");
    std::string idx_in, idx_out, idx_config;
    bool idx_no_header = false, idx_modified = false;
    idx->add_option("--in", idx_in, "Input CSV")->required();
    idx->add_option("--out", idx_out, "Output CSV")->required();
    idx->add_flag("--no-header", idx_no_header, "Input has no grid header row");
    idx->add_flag("--modified", idx_modified, "Append MEI/MHI columns for the raw curves");
    idx->add_option("--config", idx_config, "JSON file supplying defaults for any flag");

    // detect
    auto* det = app.add_subcommand("detect", "Run the full detection pipeline");
    std::string det_in, det_out, det_plot, det_fs = "d0_d1_d2", det_config;
    bool det_no_header = false;
    double det_whisker = 1.5;
    int det_sweeps = 2;
    det->add_option("--in", det_in, "Input CSV")->required();
    det->add_option("--out", det_out, "Output CSV (index,score,flag,cutoff)")->required();
    det->add_option("--feature-set", det_fs,
                    "d0_d1_d2|d0_only|d1_d2_only|d0_d1|d0_d2|d1_only|d2_only");
    det->add_flag("--no-header", det_no_header, "Input has no grid header row");
    det->add_option("--plot", det_plot, "Write an ABEI-vs-ABHI scatter SVG here");
    det->add_option("--cutoff-whisker", det_whisker, "Boxplot whisker constant");
    det->add_option("--sweeps", det_sweeps, "Comedian orthogonalization sweeps");
    det->add_option("--config", det_config, "JSON file supplying defaults for any flag");

    // bench
    auto* ben = app.add_subcommand("bench", "Monte-Carlo benchmark over DGPs");
    std::string ben_dgps = "1-19", ben_alphas = "0.1", ben_out, ben_config;
    int ben_reps = 20, ben_n = 200, ben_m = 0;
    std::uint64_t ben_seed = 1;
    ben->add_option("--dgps", ben_dgps, "DGP ids, e.g. 1-19 or 1,7,14");
    ben->add_option("--alphas", ben_alphas, "Comma-separated outlier proportions");
    ben->add_option("--reps", ben_reps, "Replications per (dgp, alpha)");
    ben->add_option("--seed", ben_seed, "Base seed; replication r uses seed+r");
    ben->add_option("--n", ben_n, "Curves per sample");
    ben->add_option("--m", ben_m, "Grid size (0 = per-DGP default)");
    ben->add_option("--out", ben_out, "Summary CSV path");
    ben->add_option("--config", ben_config, "JSON file supplying defaults for any flag");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    if (*sim) {
        apply_config(sim, sim_config);
        ehy::DgpSpec spec{sim_dgp, sim_n, sim_m, sim_alpha, sim_seed};
        ehy::FunctionalSample sample = ehy::generate(spec);
        ehy::save_sample(sample, sim_out);
        ehy::save_labels(*sample.labels, sibling_path(sim_out, ".labels.csv"));
        json sidecar = {{"dgp", spec.id}, {"n", spec.n},
                        {"m", static_cast<int>(sample.grid.size())},
                        {"alpha", spec.alpha}, {"seed", spec.seed}};
        std::ofstream js(sibling_path(sim_out, ".spec.json"));
        if (!js) throw std::runtime_error("cannot write spec sidecar");
        js << sidecar.dump(2) << '\n';
    } else if (*idx) {
        apply_config(idx, idx_config);
        require_readable(idx_in);
        ehy::FunctionalSample sample = ehy::load_sample(idx_in, !idx_no_header);
        ehy::SmoothedTriple triple = ehy::smooth_sample(sample);
        ehy::IndexMatrix features = ehy::feature_matrix(triple, sample.grid);
        if (features.isZero(0.0))
            std::cerr << "warning: all index values are zero (degenerate sample?)\n";
        std::vector<ehy::IndexPair> modified;
        if (idx_modified) modified = ehy::modified_indices(sample.values, sample.grid);

        std::ofstream out(idx_out);
        if (!out) throw std::runtime_error("cannot write file: " + idx_out);
        out.precision(17);
        for (int c = 0; c < 6; ++c) out << (c ? "," : "") << ehy::kIndexColumnNames[c];
        if (idx_modified) out << ",MEI_d0,MHI_d0";
        out << '\n';
        for (Eigen::Index i = 0; i < features.rows(); ++i) {
            for (int c = 0; c < 6; ++c) out << (c ? "," : "") << features(i, c);
            if (idx_modified)
                out << ',' << modified[static_cast<std::size_t>(i)].epigraph << ','
                    << modified[static_cast<std::size_t>(i)].hypograph;
            out << '\n';
        }
    } else if (*det) {
        apply_config(det, det_config);
        require_readable(det_in);
        ehy::FunctionalSample sample = ehy::load_sample(det_in, !det_no_header);
        ehy::EhyoutConfig config;
        config.feature_set = ehy::feature_set_from_string(det_fs);
        config.robust.cutoff_whisker = det_whisker;
        config.robust.orthogonalization_sweeps = det_sweeps;
        ehy::DetectionResult result = ehy::ehyout(sample, config);

        std::ofstream out(det_out);
        if (!out) throw std::runtime_error("cannot write file: " + det_out);
        out.precision(17);
        out << "index,score,flag,cutoff\n";
        for (Eigen::Index i = 0; i < result.scores.size(); ++i)
            out << i << ',' << result.scores[i] << ',' << (result.flags[static_cast<std::size_t>(i)] ? 1 : 0)
                << ',' << result.cutoff << '\n';

        if (!det_plot.empty()) {
            ehy::SmoothedTriple triple = ehy::smooth_sample(sample);
            ehy::IndexMatrix features = ehy::feature_matrix(triple, sample.grid);
            write_scatter_svg(det_plot, features, result.flags);
            std::ofstream pc(sibling_path(det_plot, ".points.csv"));
            pc.precision(17);
            pc << "ABEI_d0,ABHI_d0,flag\n";
            for (Eigen::Index i = 0; i < features.rows(); ++i)
                pc << features(i, 0) << ',' << features(i, 1) << ','
                   << (result.flags[static_cast<std::size_t>(i)] ? 1 : 0) << '\n';
        }
    } else if (*ben) {
        apply_config(ben, ben_config);
        if (ben_reps < 1) throw ehy::validation_error("reps must be at least 1");
        ehy::EvalSummary summary = ehy::run_benchmark(parse_dgp_list(ben_dgps),
                                                      parse_alpha_list(ben_alphas), ben_reps,
                                                      ben_seed, {}, ben_m, ben_n);
        std::cout << ehy::format_summary_table(summary);
        if (!ben_out.empty()) ehy::save_summary_csv(summary, ben_out);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const ehy::validation_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
