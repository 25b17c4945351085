#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdio>

#include <utility>
#include <vector>

#include "ardr/datasets.hpp"
#include "ardr/experiment.hpp"
#include "ardr/matrix.hpp"
#include "ardr/metrics.hpp"
#include "ardr/oracles.hpp"

namespace py = pybind11;
using rows_t = std::vector<std::vector<double>>;

namespace {

ardr::DataMatrix from_rows(const rows_t& rows) {
    ardr::detail::require(!rows.empty() && !rows[0].empty(), "matrix must be non-empty");
    ardr::DataMatrix x(rows.size(), rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        ardr::detail::require(rows[i].size() == rows[0].size(), "ragged matrix");
        for (std::size_t j = 0; j < rows[i].size(); ++j) x(i, j) = rows[i][j];
    }
    return x;
}

rows_t to_rows(const ardr::DataMatrix& x) {
    rows_t rows(x.rows(), std::vector<double>(x.cols()));
    for (std::size_t i = 0; i < x.rows(); ++i)
        for (std::size_t j = 0; j < x.cols(); ++j) rows[i][j] = x(i, j);
    return rows;
}

}  // namespace

PYBIND11_MODULE(_ardr, m) {
    m.doc() = "attraction/repulsion dimensionality reduction toolkit";

    m.def(
        "make_synthetic",
        [](const std::string& kind, std::size_t n, std::uint64_t seed, double noise,
           std::size_t extra_on_manifold, double alpha, std::size_t centers, double spread) {
            ardr::SyntheticParams p;
            p.noise = noise;
            p.extra_on_manifold = extra_on_manifold;
            p.alpha = alpha;
            p.centers = centers;
            p.spread = spread;
            ardr::Dataset d = ardr::make_synthetic(kind, n, seed, p);
            return std::make_pair(to_rows(d.x), d.labels);
        },
        py::arg("kind"), py::arg("n"), py::arg("seed"), py::arg("noise") = 0.0,
        py::arg("extra_on_manifold") = 0, py::arg("alpha") = 1.5, py::arg("centers") = 4,
        py::arg("spread") = 1.0,
        "Generate a synthetic dataset; returns (rows, labels).");

    m.def(
        "pca_oracle",
        [](const rows_t& x, std::size_t d) { return to_rows(ardr::pca_oracle(from_rows(x), d).embedding); },
        py::arg("x"), py::arg("d"),
        "Spectral PCA embedding (top-d eigenpairs of the centered Gram matrix).");

    m.def(
        "procrustes_residual",
        [](const rows_t& y, const rows_t& yref) {
            return ardr::procrustes_residual(ardr::center_rows(from_rows(y)),
                                             ardr::center_rows(from_rows(yref)));
        },
        py::arg("y"), py::arg("yref"),
        "Minimal relative Frobenius misfit over orthogonal alignments (inputs are centered).");

    m.def(
        "knn_accuracy",
        [](const rows_t& y, const std::vector<int>& labels, std::size_t k) {
            return ardr::knn_accuracy(from_rows(y), labels, k);
        },
        py::arg("y"), py::arg("labels"), py::arg("k"),
        "Leave-one-out k-NN majority-vote label accuracy in the embedding.");

    m.def(
        "neighborhood_b",
        [](const rows_t& x, const rows_t& y, std::size_t k) {
            return ardr::neighborhood_b(from_rows(x), from_rows(y), k);
        },
        py::arg("x"), py::arg("y"), py::arg("k"),
        "Fraction of points whose rank-k neighbor matches between input and embedding.");

    m.def(
        "eq8_ratio",
        [](const rows_t& x, const rows_t& y, std::size_t l, std::size_t m, bool inclusive) {
            return ardr::eq8_ratio(from_rows(x), from_rows(y), l, m, inclusive);
        },
        py::arg("x"), py::arg("y"), py::arg("l"), py::arg("m"),
        py::arg("inclusive_divisor") = false,
        "Banded neighborhood-preservation ratio normalized by the rank-1 value.");

    m.def(
        "standardize",
        [](const rows_t& x) { return to_rows(ardr::standardize(from_rows(x))); },
        py::arg("x"), "Per-column zero mean, unit variance (constant columns become zero).");

    m.def(
        "run_config",
        [](const std::string& json_text) {
            try {
                return ardr::run_experiment(ardr::parse_config(json_text));
            } catch (const std::exception& e) {
                std::fprintf(stderr, "error: %s\n", e.what());
                return 1;
            }
        },
        py::arg("json_text"),
        "Run one experiment from a JSON config string; returns the process exit status "
        "and writes embedding.csv, loss_curve.csv, metrics.json, scatter.svg.");
}
