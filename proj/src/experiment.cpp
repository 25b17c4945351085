#include "ardr/experiment.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>
#include <set>
#include <sstream>

#include "ardr/neighbors.hpp"
#include "ardr/objectives.hpp"
#include "ardr/oracles.hpp"
#include "ardr/svg.hpp"

namespace ardr {

using detail::require;
using nlohmann::json;

namespace {

const std::set<std::string> kSchemeNames = {
    "pca",           "cmds",           "isomap",     "dkpca",      "dklle",
    "umap_intended", "umap_effective", "pca_oracle", "cmds_oracle", "lle_oracle",
};

void check_keys(const json& j, const std::set<std::string>& allowed, const std::string& where) {
    require(j.is_object(), "config: '" + where + "' must be a JSON object");
    for (const auto& item : j.items())
        if (!allowed.count(item.key()))
            detail::fail("config: unknown key '" + item.key() + "' in " + where);
}

DatasetSpec parse_dataset(const json& j) {
    DatasetSpec s;
    check_keys(j,
               {"source", "kind", "n", "seed", "noise", "extra_on_manifold", "alpha", "centers",
                "spread", "path", "label_column", "subsample", "subsample_seed", "standardize"},
               "dataset");
    s.source = j.value("source", s.source);
    require(s.source == "synthetic" || s.source == "csv",
            "config: dataset.source must be 'synthetic' or 'csv'");
    s.kind = j.value("kind", s.kind);
    s.n = j.value("n", s.n);
    s.seed = j.value("seed", s.seed);
    s.params.noise = j.value("noise", s.params.noise);
    s.params.extra_on_manifold = j.value("extra_on_manifold", s.params.extra_on_manifold);
    s.params.alpha = j.value("alpha", s.params.alpha);
    s.params.centers = j.value("centers", s.params.centers);
    s.params.spread = j.value("spread", s.params.spread);
    s.path = j.value("path", s.path);
    s.label_column = j.value("label_column", s.label_column);
    s.subsample = j.value("subsample", s.subsample);
    s.subsample_seed = j.value("subsample_seed", s.subsample_seed);
    s.standardize = j.value("standardize", s.standardize);
    return s;
}

SchemeSpec parse_scheme(const json& j) {
    SchemeSpec s;
    check_keys(j, {"name", "metric", "neighbors", "input_kernel", "sigma", "symmetrize",
                   "lle_reg", "kernel_weights", "eps", "probe"},
               "scheme");
    s.name = j.value("name", s.name);
    require(kSchemeNames.count(s.name) > 0, "config: unknown scheme name '" + s.name + "'");
    s.metric = metric_from_string(j.value("metric", metric_to_string(s.metric)));
    s.neighbors = j.value("neighbors", s.neighbors);
    if (j.contains("input_kernel"))
        s.input_kernel.kind = input_kernel_kind_from_string(j.at("input_kernel").get<std::string>());
    s.input_kernel.sigma = j.value("sigma", s.input_kernel.sigma);
    if (j.contains("symmetrize"))
        s.input_kernel.symmetrize = symmetrize_from_string(j.at("symmetrize").get<std::string>());
    s.lle_reg = j.value("lle_reg", s.lle_reg);
    s.kernel_weights = j.value("kernel_weights", s.kernel_weights);
    s.eps = j.value("eps", s.eps);
    s.probe = j.value("probe", s.probe);
    require(s.probe.empty() || s.probe == "dklle",
            "config: scheme.probe must be empty or 'dklle'");
    return s;
}

RunConfig parse_run(const json& j, std::size_t* out_dim, std::string* init_path) {
    RunConfig cfg;
    check_keys(j,
               {"seed", "epochs", "learning_rate", "lr_decay", "init", "init_scale", "init_path",
                "negative_samples", "record_every", "d"},
               "run");
    cfg.seed = j.value("seed", cfg.seed);
    cfg.epochs = j.value("epochs", cfg.epochs);
    cfg.learning_rate = j.value("learning_rate", cfg.learning_rate);
    if (j.contains("lr_decay")) cfg.lr_decay = lr_decay_from_string(j.at("lr_decay").get<std::string>());
    if (j.contains("init")) cfg.init = init_kind_from_string(j.at("init").get<std::string>());
    cfg.init_scale = j.value("init_scale", cfg.init_scale);
    *init_path = j.value("init_path", std::string());
    cfg.negative_samples = j.value("negative_samples", cfg.negative_samples);
    cfg.record_every = j.value("record_every", cfg.record_every);
    *out_dim = j.value("d", *out_dim);
    return cfg;
}

MetricsSpec parse_metrics(const json& j) {
    MetricsSpec s;
    check_keys(j, {"knn_accuracy_k", "preservation_ks", "eq8_pairs"}, "metrics");
    s.knn_accuracy_k = j.value("knn_accuracy_k", s.knn_accuracy_k);
    if (j.contains("preservation_ks")) {
        s.preservation_ks.clear();
        for (const auto& v : j.at("preservation_ks")) s.preservation_ks.push_back(v.get<std::size_t>());
    }
    if (j.contains("eq8_pairs")) {
        s.eq8_pairs.clear();
        for (const auto& pair : j.at("eq8_pairs")) {
            require(pair.is_array() && pair.size() == 2,
                    "config: metrics.eq8_pairs entries must be [l, m] pairs");
            s.eq8_pairs.emplace_back(pair[0].get<std::size_t>(), pair[1].get<std::size_t>());
        }
    }
    return s;
}

// Entries of kx outside the symmetrized k-NN edge set are zero by
// construction, so the effective optimizer's edge filter matches the graph.
SymMatrix build_input_kernel(const DataMatrix& x, const NeighborGraph& g,
                             const SchemeSpec& scheme) {
    return input_kernel_matrix(x, g, scheme.input_kernel);
}

// Reconstruction weights are solved on X by default; kernel_weights opts into
// the kernel-space solve instead.
WeightMatrix build_lle_weights(const DataMatrix& x, const NeighborGraph& g,
                               const SchemeSpec& scheme, const SymMatrix* kx) {
    if (scheme.kernel_weights && kx != nullptr)
        return lle_weights_kernel(*kx, g, scheme.lle_reg);
    return lle_weights(x, g, scheme.lle_reg);
}

SymMatrix squared_dissimilarities(const DataMatrix& x, Metric metric) {
    SymMatrix d = dist_matrix(x, metric);
    if (metric == Metric::kEuclideanSq) return d;  // already squared
    SymMatrix sq(d.size());
    for (std::size_t i = 0; i < d.size(); ++i)
        for (std::size_t j = i; j < d.size(); ++j) sq.set(i, j, d(i, j) * d(i, j));
    return sq;
}

json metrics_json(const MetricReport& report) {
    json j;
    if (std::isfinite(report.knn_accuracy))
        j["knn_accuracy"] = report.knn_accuracy;
    else
        j["knn_accuracy"] = nullptr;
    json pres = json::object();
    for (const auto& [k, v] : report.preservation_by_k) pres[std::to_string(k)] = v;
    j["preservation"] = pres;
    json ratios = json::array();
    for (const auto& e : report.eq8_ratios)
        ratios.push_back({{"l", e.l}, {"m", e.m}, {"ratio", e.ratio}});
    j["eq8_ratios"] = ratios;
    j["notes"] = report.notes;
    return j;
}

void append_note(MetricReport* report, const std::string& note) {
    if (!report->notes.empty()) report->notes += "; ";
    report->notes += note;
}

}  // namespace

MetricReport compute_metrics(const MetricsSpec& spec, const Dataset& data,
                             const DataMatrix& embedding) {
    MetricReport report;
    if (spec.knn_accuracy_k >= 1) {
        if (data.labels.empty()) {
            append_note(&report, "knn_accuracy skipped: no labels");
        } else {
            report.knn_accuracy = knn_accuracy(embedding, data.labels, spec.knn_accuracy_k);
            std::set<int> classes(data.labels.begin(), data.labels.end());
            if (classes.size() == 1) append_note(&report, "single label class");
        }
    }
    if (!spec.preservation_ks.empty()) {
        std::size_t kmax = 0;
        for (std::size_t k : spec.preservation_ks) kmax = std::max(kmax, k);
        std::vector<double> profile = neighborhood_b_profile(data.x, embedding, kmax);
        for (std::size_t k : spec.preservation_ks)
            report.preservation_by_k[k] = profile[k - 1];
    }
    for (const auto& [l, m] : spec.eq8_pairs) {
        Eq8Entry entry;
        entry.l = l;
        entry.m = m;
        entry.ratio = eq8_ratio(data.x, embedding, l, m);
        report.eq8_ratios.push_back(entry);
    }
    return report;
}

namespace {

void write_loss_curve(const std::string& path, const RunResult& run) {
    std::FILE* f = std::fopen(path.c_str(), "w");
    if (!f) detail::fail("write_outputs: cannot open '" + path + "' for writing");
    std::fprintf(f, "epoch,raw,normalized\n");
    if (!run.loss_curve.empty()) {
        auto normalized = normalize_loss_curve(run.loss_curve);
        for (std::size_t i = 0; i < run.loss_curve.size(); ++i)
            std::fprintf(f, "%zu,%.17g,%.17g\n", run.loss_curve[i].first,
                         run.loss_curve[i].second, normalized[i].second);
    }
    std::fclose(f);
}

}  // namespace

ExperimentConfig parse_config(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        detail::fail(std::string("config: invalid JSON: ") + e.what());
    }
    check_keys(j, {"dataset", "scheme", "run", "outputs", "metrics"}, "the top level");
    ExperimentConfig cfg;
    if (j.contains("dataset")) cfg.dataset = parse_dataset(j.at("dataset"));
    if (j.contains("scheme")) cfg.scheme = parse_scheme(j.at("scheme"));
    if (j.contains("run")) cfg.run = parse_run(j.at("run"), &cfg.out_dim, &cfg.init_path);
    cfg.outputs = j.value("outputs", cfg.outputs);
    if (j.contains("metrics")) cfg.metrics = parse_metrics(j.at("metrics"));
    require(cfg.out_dim >= 1, "config: run.d must be at least 1");
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) detail::fail("load_config: cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

Dataset load_dataset(const DatasetSpec& spec) {
    Dataset data = spec.source == "csv"
                       ? load_csv(spec.path, spec.label_column)
                       : make_synthetic(spec.kind, spec.n, spec.seed, spec.params);
    if (spec.subsample > 0 && spec.subsample < data.x.rows())
        data = subsample(data, spec.subsample, spec.subsample_seed);
    if (spec.standardize) data.x = standardize(data.x);
    return data;
}

ExperimentResult run_experiment_core(const ExperimentConfig& cfg) {
    ExperimentResult result;
    result.data = load_dataset(cfg.dataset);
    const DataMatrix& x = result.data.x;
    const std::size_t n = x.rows(), d = cfg.out_dim;
    const std::string& name = cfg.scheme.name;

    const bool needs_graph = name == "isomap" || name == "dkpca" || name == "dklle" ||
                             name == "umap_intended" || name == "umap_effective" ||
                             name == "lle_oracle" || !cfg.scheme.probe.empty() ||
                             cfg.run.init == InitKind::kLaplacianEigenmaps;
    NeighborGraph g;
    if (needs_graph) g = knn_graph(x, cfg.scheme.neighbors, Metric::kEuclideanSq);

    const bool needs_kernel = name == "dkpca" || name == "umap_intended" ||
                              name == "umap_effective" ||
                              ((name == "dklle" || name == "lle_oracle" ||
                                !cfg.scheme.probe.empty()) &&
                               cfg.scheme.kernel_weights) ||
                              cfg.run.init == InitKind::kLaplacianEigenmaps;
    SymMatrix kx;
    if (needs_kernel) kx = build_input_kernel(x, g, cfg.scheme);

    // oracle pass-throughs skip the optimizer entirely
    if (name == "pca_oracle" || name == "cmds_oracle" || name == "lle_oracle") {
        OracleEmbedding oe;
        if (name == "pca_oracle") {
            oe = pca_oracle(x, d);
        } else if (name == "cmds_oracle") {
            oe = cmds_oracle(squared_dissimilarities(x, cfg.scheme.metric), d);
        } else {
            WeightMatrix w = build_lle_weights(x, g, cfg.scheme,
                                               needs_kernel ? &kx : nullptr);
            oe = lle_oracle(m_matrix(w), d);
        }
        result.oracle = true;
        result.run.embedding = oe.embedding;
        result.report = compute_metrics(cfg.metrics, result.data, result.run.embedding);
        if (oe.rank_deficient) append_note(&result.report, "oracle spectrum rank-deficient");
        return result;
    }

    std::unique_ptr<GradientScheme> scheme;
    if (name == "pca") {
        scheme = std::make_unique<PcaScheme>("pca", double_center(gram(x)));
    } else if (name == "cmds") {
        scheme = std::make_unique<PcaScheme>(
            "cmds", cmds_target(squared_dissimilarities(x, cfg.scheme.metric)));
    } else if (name == "isomap") {
        GeodesicDistances geo = geodesic_dists(g);
        scheme = std::make_unique<PcaScheme>("isomap", cmds_target(geo.sq_dists));
    } else if (name == "dkpca") {
        scheme = std::make_unique<DkPcaScheme>(double_center(kx));
    } else if (name == "dklle") {
        scheme = std::make_unique<DkLleScheme>(
            build_lle_weights(x, g, cfg.scheme, needs_kernel ? &kx : nullptr));
    } else if (name == "umap_intended" || name == "umap_effective") {
        scheme = std::make_unique<UmapIntendedScheme>(kx, cfg.scheme.eps);
    } else {
        detail::fail("run_experiment: unhandled scheme '" + name + "'");
    }

    std::unique_ptr<GradientScheme> probe;
    if (!cfg.scheme.probe.empty())
        probe = std::make_unique<DkLleScheme>(
            build_lle_weights(x, g, cfg.scheme, needs_kernel ? &kx : nullptr));

    DataMatrix provided;
    if (cfg.run.init == InitKind::kProvided) {
        require(!cfg.init_path.empty(), "config: init=provided needs run.init_path");
        provided = load_csv(cfg.init_path).x;
    }
    DataMatrix y0 = make_initial_embedding(
        cfg.run, n, d, needs_kernel ? &kx : nullptr,
        cfg.run.init == InitKind::kProvided ? &provided : nullptr);

    result.run = name == "umap_effective"
                     ? umap_effective_optimize(kx, g, y0, cfg.run, probe.get())
                     : descend(*scheme, y0, cfg.run, probe.get());
    result.report = compute_metrics(cfg.metrics, result.data, result.run.embedding);
    return result;
}

void write_outputs(const ExperimentConfig& cfg, const ExperimentResult& result) {
    std::filesystem::create_directories(cfg.outputs);
    const std::string dir = cfg.outputs + "/";
    write_csv(dir + "embedding.csv", result.run.embedding);
    write_loss_curve(dir + "loss_curve.csv", result.run);

    json j = metrics_json(result.report);
    if (!result.oracle) {
        j["final_loss"] = result.run.loss_curve.back().second;
        if (!result.run.probe_curve.empty())
            j["final_probe_loss"] = result.run.probe_curve.back().second;
    }
    std::ofstream out(dir + "metrics.json");
    if (!out) detail::fail("write_outputs: cannot open '" + dir + "metrics.json' for writing");
    out << j.dump(2) << "\n";
    out.close();

    emit_scatter_svg(result.run.embedding, result.data.labels, dir + "scatter.svg");
}

int run_experiment(const ExperimentConfig& cfg) {
    try {
        ExperimentResult result = run_experiment_core(cfg);
        write_outputs(cfg, result);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}

int run_compare(const ExperimentConfig& a, const ExperimentConfig& b) {
    try {
        ExperimentResult ra = run_experiment_core(a);
        write_outputs(a, ra);
        ExperimentResult rb = run_experiment_core(b);
        write_outputs(b, rb);

        json j;
        j["a"] = metrics_json(ra.report);
        j["b"] = metrics_json(rb.report);
        if (!ra.oracle) j["a"]["final_loss"] = ra.run.loss_curve.back().second;
        if (!rb.oracle) j["b"]["final_loss"] = rb.run.loss_curve.back().second;

        json diff;
        if (std::isfinite(ra.report.knn_accuracy) && std::isfinite(rb.report.knn_accuracy))
            diff["knn_accuracy_abs"] = std::abs(ra.report.knn_accuracy - rb.report.knn_accuracy);
        json eq8 = json::array();
        for (const auto& ea : ra.report.eq8_ratios)
            for (const auto& eb : rb.report.eq8_ratios)
                if (ea.l == eb.l && ea.m == eb.m)
                    eq8.push_back({{"l", ea.l},
                                   {"m", ea.m},
                                   {"a", ea.ratio},
                                   {"b", eb.ratio},
                                   {"abs_diff", std::abs(ea.ratio - eb.ratio)}});
        diff["eq8_ratios"] = eq8;
        j["diff"] = diff;

        std::filesystem::create_directories(a.outputs);
        std::ofstream out(a.outputs + "/comparison.json");
        if (!out) detail::fail("run_compare: cannot open comparison.json for writing");
        out << j.dump(2) << "\n";
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}

std::string metrics_to_json(const MetricReport& report) {
    return metrics_json(report).dump(2) + "\n";
}

}  // namespace ardr
