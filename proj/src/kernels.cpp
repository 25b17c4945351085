#include "ardr/kernels.hpp"

#include <algorithm>
#include <cmath>

namespace ardr {

using detail::require;

double output_kernel(const OutputKernel& k, double u) {
    require(u >= 0.0, "output_kernel: u must be nonnegative");
    require(k.kind == OutputKernelKind::kCauchy,
            "output_kernel: linear kernel has no pointwise form; use Gram matrices");
    return 1.0 / (1.0 + u);
}

double output_kernel_deriv(const OutputKernel& k, double u) {
    require(u >= 0.0, "output_kernel_deriv: u must be nonnegative");
    require(k.kind == OutputKernelKind::kCauchy,
            "output_kernel_deriv: linear kernel handled by schemes directly");
    double ky = 1.0 / (1.0 + u);
    return -ky * ky;
}

InputKernelKind input_kernel_kind_from_string(const std::string& s) {
    if (s == "linear") return InputKernelKind::kLinear;
    if (s == "rbf_fixed") return InputKernelKind::kRbfFixed;
    if (s == "rbf_local") return InputKernelKind::kRbfLocal;
    throw std::invalid_argument("unknown input kernel kind: " + s);
}

Symmetrize symmetrize_from_string(const std::string& s) {
    if (s == "none") return Symmetrize::kNone;
    if (s == "fuzzy_union") return Symmetrize::kFuzzyUnion;
    if (s == "average") return Symmetrize::kAverage;
    throw std::invalid_argument("unknown symmetrization: " + s);
}

LocalScales smooth_knn_scales(const NeighborGraph& g) {
    const std::size_t n = g.n, k = g.k;
    std::vector<double> dist(n * k);
    double mean = 0.0;
    for (std::size_t t = 0; t < n * k; ++t) {
        dist[t] = g.metric == Metric::kEuclideanSq ? std::sqrt(g.dists[t]) : g.dists[t];
        mean += dist[t];
    }
    mean /= static_cast<double>(n * k);
    if (mean <= 0.0)
        detail::fail("smooth_knn_scales: all points identical, local bandwidth undefined");

    const double target = std::log2(static_cast<double>(k));
    const double lo_bound = 1e-3 * mean, hi_bound = 1e3 * mean;

    LocalScales out;
    out.rho.resize(n);
    out.sigma.resize(n);
    out.residual.resize(n);
    out.clamped.assign(n, false);
    for (std::size_t i = 0; i < n; ++i) {
        const double* d = dist.data() + i * k;
        double rho = d[0];  // row-sorted ascending
        auto weight_sum = [&](double sigma) {
            double s = 0.0;
            for (std::size_t t = 0; t < k; ++t)
                s += std::exp(-std::max(0.0, d[t] - rho) / sigma);
            return s;
        };
        double lo = lo_bound, hi = hi_bound;
        double sigma;
        if (weight_sum(lo) >= target) {
            sigma = lo;
            out.clamped[i] = true;
        } else if (weight_sum(hi) <= target) {
            sigma = hi;
            out.clamped[i] = true;
        } else {
            for (int it = 0; it < 64; ++it) {
                double mid = 0.5 * (lo + hi);
                if (weight_sum(mid) < target)
                    lo = mid;
                else
                    hi = mid;
            }
            sigma = 0.5 * (lo + hi);
        }
        out.rho[i] = rho;
        out.sigma[i] = sigma;
        out.residual[i] = std::abs(weight_sum(sigma) - target);
    }
    return out;
}

SymMatrix input_kernel_matrix(const DataMatrix& x, const NeighborGraph& g,
                              const InputKernelSpec& spec) {
    require(x.rows() == g.n, "input_kernel_matrix: graph/data size mismatch");
    const std::size_t n = x.rows();

    std::vector<double> raw(n * n, 0.0);
    switch (spec.kind) {
        case InputKernelKind::kLinear: {
            SymMatrix gm = gram(x);
            raw = gm.values();
            break;
        }
        case InputKernelKind::kRbfFixed: {
            require(spec.sigma > 0.0, "input_kernel_matrix: sigma must be positive");
            SymMatrix d2 = dist_matrix(x, Metric::kEuclideanSq);
            const double inv = 1.0 / (2.0 * spec.sigma * spec.sigma);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    raw[i * n + j] = std::exp(-d2(i, j) * inv);
            break;
        }
        case InputKernelKind::kRbfLocal: {
            require(spec.symmetrize != Symmetrize::kNone,
                    "input_kernel_matrix: rbf_local is asymmetric before symmetrization; "
                    "use fuzzy_union or average");
            LocalScales sc = smooth_knn_scales(g);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t t = 0; t < g.k; ++t) {
                    double d = g.metric == Metric::kEuclideanSq ? std::sqrt(g.dist(i, t))
                                                                : g.dist(i, t);
                    raw[i * n + g.idx(i, t)] =
                        std::exp(-std::max(0.0, d - sc.rho[i]) / sc.sigma[i]);
                }
            break;
        }
    }

    SymMatrix out(n);
    switch (spec.symmetrize) {
        case Symmetrize::kNone:
            out = SymMatrix::from_dense(raw, n);
            break;
        case Symmetrize::kFuzzyUnion:
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = i; j < n; ++j) {
                    double a = raw[i * n + j], b = raw[j * n + i];
                    out.set(i, j, a + b - a * b);
                }
            break;
        case Symmetrize::kAverage:
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = i; j < n; ++j)
                    out.set(i, j, 0.5 * (raw[i * n + j] + raw[j * n + i]));
            break;
    }
    return out;
}

double psd_diagnostic(const SymMatrix& k) {
    double norm = k.frob_norm();
    if (norm == 0.0) return 0.0;
    EigenPairs eig = sym_eigh(k, 1, EigenEnd::kSmallest);
    return eig.values[0] / norm;
}

}  // namespace ardr
