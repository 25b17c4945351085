#pragma once

#include <string>
#include <utility>
#include <vector>

#include "ardr/datasets.hpp"
#include "ardr/engine.hpp"
#include "ardr/kernels.hpp"
#include "ardr/matrix.hpp"
#include "ardr/metrics.hpp"

namespace ardr {

// Where the data comes from: a synthetic generator or a CSV file, optionally
// subsampled (uniform without replacement, seeded) and standardized.
struct DatasetSpec {
    std::string source = "synthetic";  // synthetic | csv
    std::string kind = "swiss_roll";
    std::size_t n = 500;
    std::uint64_t seed = 0;
    SyntheticParams params;
    std::string path;       // csv source
    int label_column = -1;  // csv source; -1 = no labels
    std::size_t subsample = 0;  // 0 = keep everything
    std::uint64_t subsample_seed = 0;
    bool standardize = false;
};

// Which objective to optimize (or which oracle to evaluate) and how its
// inputs are built from the dataset.
struct SchemeSpec {
    std::string name = "pca";  // pca | cmds | isomap | dkpca | dklle |
                               // umap_intended | umap_effective |
                               // pca_oracle | cmds_oracle | lle_oracle
    Metric metric = Metric::kEuclideanSq;  // cmds dissimilarities
    std::size_t neighbors = 15;            // isomap / kernels / lle / umap
    InputKernelSpec input_kernel;
    double lle_reg = 1e-3;
    bool kernel_weights = false;  // dklle/lle_oracle: solve the reconstruction
                                  // weights in kernel space instead of on X
    double eps = 1e-3;        // umap repulsion guard
    std::string probe;        // optional second objective scored on the
                              // trajectory ("dklle"); empty = none
};

struct MetricsSpec {
    std::size_t knn_accuracy_k = 15;  // 0 = skip
    std::vector<std::size_t> preservation_ks = {5, 10};
    std::vector<std::pair<std::size_t, std::size_t>> eq8_pairs = {{2, 5}, {6, 10}};
};

struct ExperimentConfig {
    DatasetSpec dataset;
    SchemeSpec scheme;
    RunConfig run;
    std::size_t out_dim = 2;
    std::string init_path;  // init = provided: CSV holding the start embedding
    std::string outputs = "out";
    MetricsSpec metrics;
};

// Parse a config from JSON text / a file. Unknown keys are rejected so typos
// fail loudly; absent keys keep the defaults above.
ExperimentConfig parse_config(const std::string& json_text);
ExperimentConfig load_config(const std::string& path);

// Resolve a DatasetSpec: generate or read, then subsample and standardize.
Dataset load_dataset(const DatasetSpec& spec);

// Score an embedding against its source data per the request: knn_accuracy
// (skipped with a note when there are no labels), neighborhood preservation
// at each k, and the eq8 ratios.
MetricReport compute_metrics(const MetricsSpec& spec, const Dataset& data,
                             const DataMatrix& embedding);

struct ExperimentResult {
    Dataset data;
    RunResult run;
    MetricReport report;
    bool oracle = false;  // pass-through run: embedding came from an eigensolver
};

// Build the scheme, optimize (or call the oracle), and compute the requested
// metrics. Throws on any failure.
ExperimentResult run_experiment_core(const ExperimentConfig& cfg);

// Serialize a result into cfg.outputs: embedding.csv (17 significant digits),
// loss_curve.csv (`epoch,raw,normalized`), metrics.json, scatter.svg.
void write_outputs(const ExperimentConfig& cfg, const ExperimentResult& result);

// core + write_outputs with errors reduced to a one-line stderr diagnostic.
// Returns a process exit status (0 ok, 1 failure).
int run_experiment(const ExperimentConfig& cfg);

// Paired harness: run both configs, write their artifacts, then a
// comparison.json (both metric reports, final losses, and the differences)
// into the first config's output directory.
int run_compare(const ExperimentConfig& a, const ExperimentConfig& b);

// metrics.json body for one result (also used by the `metrics` subcommand).
std::string metrics_to_json(const MetricReport& report);

}  // namespace ardr
