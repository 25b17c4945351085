#include "ardr/datasets.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numeric>
#include <random>

namespace ardr {

using detail::require;
using detail::str_printf;

namespace {

constexpr double kPi = 3.14159265358979323846;

int swiss_bin(double t) {
    const double lo = 1.5 * kPi, hi = 4.5 * kPi;
    int bin = static_cast<int>((t - lo) / (hi - lo) * 4.0);
    return std::min(3, std::max(0, bin));
}

bool parse_cell(const std::string& cell, double* out) {
    if (cell.empty()) return false;
    const char* begin = cell.c_str();
    char* end = nullptr;
    double v = std::strtod(begin, &end);
    if (end != begin + cell.size()) return false;
    *out = v;
    return true;
}

std::vector<std::string> split_row(const std::string& line) {
    std::vector<std::string> cells;
    std::size_t start = 0;
    while (true) {
        std::size_t comma = line.find(',', start);
        if (comma == std::string::npos) {
            cells.push_back(line.substr(start));
            break;
        }
        cells.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
    return cells;
}

}  // namespace

Dataset make_swiss_roll(std::size_t n, std::uint64_t seed, double noise,
                        std::size_t extra_on_manifold) {
    require(n >= 1, "make_swiss_roll: need at least one point");
    require(noise >= 0.0, "make_swiss_roll: noise must be nonnegative");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> ut(1.5 * kPi, 4.5 * kPi);
    std::uniform_real_distribution<double> uh(0.0, 21.0);
    std::normal_distribution<double> jitter(0.0, 1.0);

    Dataset out;
    const std::size_t total = n + extra_on_manifold;
    out.x = DataMatrix(total, 3);
    out.labels.resize(total);
    for (std::size_t i = 0; i < total; ++i) {
        double t = ut(rng), h = uh(rng);
        out.x(i, 0) = t * std::cos(t);
        out.x(i, 1) = h;
        out.x(i, 2) = t * std::sin(t);
        if (i < n && noise > 0.0)
            for (std::size_t c = 0; c < 3; ++c) out.x(i, c) += noise * jitter(rng);
        out.labels[i] = swiss_bin(t);
    }
    return out;
}

Dataset make_plane(std::size_t n, std::uint64_t seed) {
    require(n >= 1, "make_plane: need at least one point");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 10.0);
    Dataset out;
    out.x = DataMatrix(n, 3);
    out.labels.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        double a = u(rng), b = u(rng);
        out.x(i, 0) = a;
        out.x(i, 1) = b;
        out.x(i, 2) = 0.0;
        out.labels[i] = (a >= 5.0 ? 1 : 0) + (b >= 5.0 ? 2 : 0);
    }
    return out;
}

Dataset make_plane_plus_line(std::size_t n, std::uint64_t seed) {
    require(n >= 2, "make_plane_plus_line: need at least two points");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 10.0);
    const std::size_t line = std::max<std::size_t>(1, n / 5);
    Dataset out;
    out.x = DataMatrix(n, 3);
    out.labels.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (i < n - line) {
            out.x(i, 0) = u(rng);
            out.x(i, 1) = u(rng);
            out.x(i, 2) = 0.0;
            out.labels[i] = 0;
        } else {
            out.x(i, 0) = 5.0;
            out.x(i, 1) = 5.0;
            out.x(i, 2) = u(rng);
            out.labels[i] = 1;
        }
    }
    return out;
}

Dataset make_plane_pareto(std::size_t n, std::uint64_t seed, double alpha) {
    require(n >= 1, "make_plane_pareto: need at least one point");
    require(alpha > 0.0, "make_plane_pareto: alpha must be positive");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 10.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    Dataset out;
    out.x = DataMatrix(n, 3);
    out.labels.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        double a = u(rng), b = u(rng);
        out.x(i, 0) = a;
        out.x(i, 1) = b;
        out.x(i, 2) = std::pow(1.0 - unit(rng), -1.0 / alpha);  // Pareto(alpha), x_m = 1
        out.labels[i] = (a >= 5.0 ? 1 : 0) + (b >= 5.0 ? 2 : 0);
    }
    return out;
}

Dataset make_gaussian_blobs(std::size_t n, std::uint64_t seed, std::size_t centers,
                            double spread) {
    require(n >= 1, "make_gaussian_blobs: need at least one point");
    require(centers >= 1, "make_gaussian_blobs: need at least one center");
    require(spread >= 0.0, "make_gaussian_blobs: spread must be nonnegative");
    const std::size_t d = 5;
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);

    DataMatrix mu(centers, d);
    for (std::size_t k = 0; k < centers; ++k)
        for (std::size_t c = 0; c < d; ++c) mu(k, c) = 4.0 * gauss(rng);

    Dataset out;
    out.x = DataMatrix(n, d);
    out.labels.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t k = i % centers;
        out.labels[i] = static_cast<int>(k);
        for (std::size_t c = 0; c < d; ++c) out.x(i, c) = mu(k, c) + spread * gauss(rng);
    }
    return out;
}

Dataset make_synthetic(const std::string& kind, std::size_t n, std::uint64_t seed,
                       const SyntheticParams& params) {
    if (kind == "swiss_roll")
        return make_swiss_roll(n, seed, params.noise, params.extra_on_manifold);
    if (kind == "plane") return make_plane(n, seed);
    if (kind == "plane_plus_line") return make_plane_plus_line(n, seed);
    if (kind == "plane_pareto") return make_plane_pareto(n, seed, params.alpha);
    if (kind == "gaussian_blobs") return make_gaussian_blobs(n, seed, params.centers, params.spread);
    detail::fail("make_synthetic: unknown kind '" + kind + "'");
}

Dataset load_csv(const std::string& path, int label_column) {
    std::ifstream in(path);
    if (!in) detail::fail("load_csv: cannot open '" + path + "'");

    Dataset out;
    std::vector<std::string> label_names;
    std::vector<double> values;
    std::size_t width = 0, rows = 0, lineno = 0;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> cells = split_row(line);

        if (label_column >= 0 && static_cast<std::size_t>(label_column) >= cells.size())
            detail::fail(str_printf("load_csv: line %zu has no label column %d", lineno,
                                    label_column));
        if (first) {
            // a header is any first row whose data cells are not all numeric
            bool numeric = true;
            double v;
            for (std::size_t c = 0; c < cells.size(); ++c) {
                if (label_column >= 0 && c == static_cast<std::size_t>(label_column)) continue;
                if (!parse_cell(cells[c], &v)) numeric = false;
            }
            first = false;
            if (!numeric) continue;
        }

        std::size_t data_width = cells.size() - (label_column >= 0 ? 1 : 0);
        if (width == 0) width = data_width;
        if (data_width != width)
            detail::fail(str_printf("load_csv: line %zu has %zu data columns, expected %zu",
                                    lineno, data_width, width));
        for (std::size_t c = 0; c < cells.size(); ++c) {
            if (label_column >= 0 && c == static_cast<std::size_t>(label_column)) {
                auto pos = std::find(label_names.begin(), label_names.end(), cells[c]);
                if (pos == label_names.end()) {
                    label_names.push_back(cells[c]);
                    out.labels.push_back(static_cast<int>(label_names.size() - 1));
                } else {
                    out.labels.push_back(static_cast<int>(pos - label_names.begin()));
                }
                continue;
            }
            double v;
            if (!parse_cell(cells[c], &v))
                detail::fail(str_printf("load_csv: line %zu: cell '%s' is not numeric", lineno,
                                        cells[c].c_str()));
            values.push_back(v);
        }
        ++rows;
    }
    if (rows == 0 || width == 0) detail::fail("load_csv: no data rows in '" + path + "'");

    out.x = DataMatrix(rows, width);
    for (std::size_t i = 0; i < rows * width; ++i) out.x.values()[i] = values[i];
    return out;
}

void write_csv(const std::string& path, const DataMatrix& x) {
    require(!x.empty(), "write_csv: empty matrix");
    std::FILE* f = std::fopen(path.c_str(), "w");
    if (!f) detail::fail("write_csv: cannot open '" + path + "' for writing");
    for (std::size_t i = 0; i < x.rows(); ++i) {
        for (std::size_t j = 0; j < x.cols(); ++j)
            std::fprintf(f, j + 1 < x.cols() ? "%.17g," : "%.17g\n", x(i, j));
    }
    std::fclose(f);
}

Dataset subsample(const Dataset& d, std::size_t m, std::uint64_t seed) {
    const std::size_t n = d.x.rows();
    require(m >= 1 && m <= n, "subsample: need 1 <= m <= n");
    std::mt19937_64 rng(seed);
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    for (std::size_t i = 0; i < m; ++i) {
        std::size_t j = i + static_cast<std::size_t>(rng() % (n - i));
        std::swap(idx[i], idx[j]);
    }
    idx.resize(m);
    std::sort(idx.begin(), idx.end());  // keep the original row order

    Dataset out;
    out.x = DataMatrix(m, d.x.cols());
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t c = 0; c < d.x.cols(); ++c) out.x(i, c) = d.x(idx[i], c);
    if (!d.labels.empty()) {
        out.labels.resize(m);
        for (std::size_t i = 0; i < m; ++i) out.labels[i] = d.labels[idx[i]];
    }
    return out;
}

DataMatrix standardize(const DataMatrix& x) {
    require(!x.empty(), "standardize: empty matrix");
    const std::size_t n = x.rows(), d = x.cols();
    DataMatrix out(n, d);
    for (std::size_t c = 0; c < d; ++c) {
        double mean = 0.0;
        for (std::size_t i = 0; i < n; ++i) mean += x(i, c);
        mean /= static_cast<double>(n);
        double var = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double diff = x(i, c) - mean;
            var += diff * diff;
        }
        var /= static_cast<double>(n);
        double sd = std::sqrt(var);
        if (sd <= 1e-12 * (std::abs(mean) + 1.0)) {
            for (std::size_t i = 0; i < n; ++i) out(i, c) = 0.0;
        } else {
            for (std::size_t i = 0; i < n; ++i) out(i, c) = (x(i, c) - mean) / sd;
        }
    }
    return out;
}

}  // namespace ardr
