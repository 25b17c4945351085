#include <CLI11.hpp>

#include <cstdio>
#include <string>
#include <vector>

#include "ardr/datasets.hpp"
#include "ardr/experiment.hpp"

namespace {

// Append the labels as a trailing integer column so one CSV carries the whole
// dataset; `ardr run`/`ardr metrics` read it back with label_column = last.
ardr::DataMatrix with_label_column(const ardr::Dataset& d) {
    if (d.labels.empty()) return d.x;
    ardr::DataMatrix out(d.x.rows(), d.x.cols() + 1);
    for (std::size_t i = 0; i < d.x.rows(); ++i) {
        for (std::size_t j = 0; j < d.x.cols(); ++j) out(i, j) = d.x(i, j);
        out(i, d.x.cols()) = static_cast<double>(d.labels[i]);
    }
    return out;
}

int cmd_generate(const std::string& kind, std::size_t n, std::uint64_t seed,
                 const std::string& out, const ardr::SyntheticParams& params) {
    try {
        ardr::Dataset d = ardr::make_synthetic(kind, n, seed, params);
        ardr::write_csv(out, with_label_column(d));
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}

int cmd_metrics(const std::string& x_path, const std::string& y_path, int label_column,
                const ardr::MetricsSpec& spec) {
    try {
        ardr::Dataset data = ardr::load_csv(x_path, label_column);
        ardr::Dataset emb = ardr::load_csv(y_path);
        ardr::MetricReport report = ardr::compute_metrics(spec, data, emb.x);
        std::fputs(ardr::metrics_to_json(report).c_str(), stdout);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"attraction/repulsion dimensionality reduction toolkit"};
    app.require_subcommand(1);

    // run
    auto* run = app.add_subcommand("run", "run one experiment from a JSON config");
    std::string config_path;
    run->add_option("config", config_path, "JSON config file")->required();
    std::string outputs_flag;
    run->add_option("--outputs", outputs_flag, "override the output directory");
    std::uint64_t seed_flag = 0;
    auto* seed_opt = run->add_option("--seed", seed_flag, "override run.seed");
    std::size_t epochs_flag = 0;
    auto* epochs_opt = run->add_option("--epochs", epochs_flag, "override run.epochs");
    double lr_flag = 0.0;
    auto* lr_opt = run->add_option("--learning-rate", lr_flag, "override run.learning_rate");

    // generate
    auto* gen = app.add_subcommand("generate", "write a synthetic dataset as CSV");
    std::string kind, gen_out;
    std::size_t gen_n = 500;
    std::uint64_t gen_seed = 0;
    ardr::SyntheticParams params;
    gen->add_option("kind", kind,
                    "swiss_roll | plane | plane_plus_line | plane_pareto | gaussian_blobs")
        ->required();
    gen->add_option("--n", gen_n, "number of points");
    gen->add_option("--seed", gen_seed, "generator seed");
    gen->add_option("--out", gen_out, "output CSV path (labels in the last column)")->required();
    gen->add_option("--noise", params.noise, "swiss_roll ambient jitter");
    gen->add_option("--extra-on-manifold", params.extra_on_manifold,
                    "swiss_roll extra exact-surface points");
    gen->add_option("--alpha", params.alpha, "plane_pareto tail index");
    gen->add_option("--centers", params.centers, "gaussian_blobs cluster count");
    gen->add_option("--spread", params.spread, "gaussian_blobs cluster spread");

    // metrics
    auto* met = app.add_subcommand("metrics", "score an embedding against its source data");
    std::string x_path, y_path;
    int label_column = -1;
    ardr::MetricsSpec mspec;
    met->add_option("--x", x_path, "source data CSV")->required();
    met->add_option("--y", y_path, "embedding CSV")->required();
    met->add_option("--labels", label_column, "label column index in --x (-1 = none)");
    met->add_option("--knn-k", mspec.knn_accuracy_k, "knn_accuracy k (0 = skip)");
    met->add_option("--preservation-k", mspec.preservation_ks,
                    "neighborhood preservation sizes");
    std::vector<std::size_t> eq8_flat;
    met->add_option("--eq8", eq8_flat, "eq8 ratio (l, m) pairs, flattened");

    // compare
    auto* cmp = app.add_subcommand("compare", "run two configs and diff their metrics");
    std::string config_a, config_b;
    cmp->add_option("configA", config_a, "first JSON config")->required();
    cmp->add_option("configB", config_b, "second JSON config")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) {
            ardr::ExperimentConfig cfg = ardr::load_config(config_path);
            if (!outputs_flag.empty()) cfg.outputs = outputs_flag;
            if (seed_opt->count() > 0) cfg.run.seed = seed_flag;
            if (epochs_opt->count() > 0) cfg.run.epochs = epochs_flag;
            if (lr_opt->count() > 0) cfg.run.learning_rate = lr_flag;
            return ardr::run_experiment(cfg);
        }
        if (gen->parsed()) return cmd_generate(kind, gen_n, gen_seed, gen_out, params);
        if (met->parsed()) {
            if (eq8_flat.size() % 2 != 0) {
                std::fprintf(stderr, "error: --eq8 expects an even number of values\n");
                return 1;
            }
            if (!eq8_flat.empty()) {
                mspec.eq8_pairs.clear();
                for (std::size_t i = 0; i + 1 < eq8_flat.size(); i += 2)
                    mspec.eq8_pairs.emplace_back(eq8_flat[i], eq8_flat[i + 1]);
            }
            return cmd_metrics(x_path, y_path, label_column, mspec);
        }
        if (cmp->parsed())
            return ardr::run_compare(ardr::load_config(config_a), ardr::load_config(config_b));
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
