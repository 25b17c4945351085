#include "ardr/engine.hpp"

#include <chrono>
#include <cmath>
#include <random>

namespace ardr {

using detail::require;

namespace {

const OutputKernel kCauchy{OutputKernelKind::kCauchy};

double lr_at(const RunConfig& cfg, std::size_t epoch) {
    if (cfg.lr_decay == LrDecay::kNone) return cfg.learning_rate;
    double frac = static_cast<double>(epoch) / static_cast<double>(cfg.epochs);
    return cfg.learning_rate * (1.0 - frac);
}

double clip4(double v) { return v > 4.0 ? 4.0 : (v < -4.0 ? -4.0 : v); }

double seconds_since(const std::chrono::steady_clock::time_point& start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

LrDecay lr_decay_from_string(const std::string& s) {
    if (s == "none") return LrDecay::kNone;
    if (s == "linear_to_zero") return LrDecay::kLinearToZero;
    detail::fail("lr_decay_from_string: unknown decay '" + s + "'");
}

InitKind init_kind_from_string(const std::string& s) {
    if (s == "random_gaussian") return InitKind::kRandomGaussian;
    if (s == "laplacian_eigenmaps") return InitKind::kLaplacianEigenmaps;
    if (s == "provided") return InitKind::kProvided;
    detail::fail("init_kind_from_string: unknown init '" + s + "'");
}

RunResult descend(const GradientScheme& scheme, const DataMatrix& y0, const RunConfig& cfg,
                  const GradientScheme* loss_probe) {
    require(cfg.epochs >= 1, "descend: epochs must be at least 1");
    require(cfg.learning_rate > 0.0, "descend: learning_rate must be positive");
    require(cfg.record_every >= 1, "descend: record_every must be at least 1");
    require(y0.all_finite(), "descend: non-finite initial embedding");

    const auto start = std::chrono::steady_clock::now();
    RunResult out;
    out.embedding = y0;
    for (std::size_t t = 0; t < cfg.epochs; ++t) {
        const bool record = t % cfg.record_every == 0;
        if (record) {
            double loss = scheme.loss(out.embedding);
            if (!std::isfinite(loss))
                detail::fail(detail::str_printf("descend: non-finite loss at epoch %zu", t));
            out.loss_curve.emplace_back(t, loss);
            if (loss_probe) out.probe_curve.emplace_back(t, loss_probe->loss(out.embedding));
        }
        DataMatrix g = scheme.gradient(out.embedding);
        if (!g.all_finite())
            detail::fail(detail::str_printf("descend: non-finite gradient at epoch %zu", t));
        if (record) out.grad_norm_curve.emplace_back(t, g.frob_norm());
        const double lr = lr_at(cfg, t);
        for (std::size_t i = 0; i < g.values().size(); ++i)
            out.embedding.values()[i] -= lr * g.values()[i];
    }
    double final_loss = scheme.loss(out.embedding);
    if (!std::isfinite(final_loss))
        detail::fail(detail::str_printf("descend: non-finite loss at epoch %zu", cfg.epochs));
    out.loss_curve.emplace_back(cfg.epochs, final_loss);
    out.grad_norm_curve.emplace_back(cfg.epochs, scheme.gradient(out.embedding).frob_norm());
    if (loss_probe) out.probe_curve.emplace_back(cfg.epochs, loss_probe->loss(out.embedding));
    out.wall_time = seconds_since(start);
    return out;
}

RunResult umap_effective_optimize(const SymMatrix& kx, const NeighborGraph& g,
                                  const DataMatrix& y0, const RunConfig& cfg,
                                  const GradientScheme* loss_probe) {
    require(cfg.epochs >= 1, "umap_effective_optimize: epochs must be at least 1");
    require(cfg.learning_rate > 0.0, "umap_effective_optimize: learning_rate must be positive");
    require(cfg.negative_samples >= 1,
            "umap_effective_optimize: negative_samples must be at least 1");
    require(cfg.record_every >= 1, "umap_effective_optimize: record_every must be at least 1");
    require(kx.size() == y0.rows(), "umap_effective_optimize: kernel/embedding size mismatch");
    require(y0.all_finite(), "umap_effective_optimize: non-finite initial embedding");

    const auto start = std::chrono::steady_clock::now();
    const std::size_t n = y0.rows(), d = y0.cols();
    const double eps = 1e-3;

    EdgeList edges = sym_edge_list(g);
    std::vector<double> weight;
    std::vector<std::uint32_t> heads, tails;
    double w_max = 0.0;
    for (std::size_t e = 0; e < edges.size(); ++e) {
        double w = kx(edges.heads[e], edges.tails[e]);
        if (w <= 0.0) continue;
        heads.push_back(edges.heads[e]);
        tails.push_back(edges.tails[e]);
        weight.push_back(w);
        w_max = std::max(w_max, w);
    }
    if (heads.empty()) detail::fail("umap_effective_optimize: empty edge set");

    // Edge e fires ceil(epochs * w/w_max) times, firing k landing on epoch
    // floor(k * epochs / fires): UMAP's evenly spaced schedule.
    std::vector<std::size_t> fires(heads.size());
    for (std::size_t e = 0; e < heads.size(); ++e)
        fires[e] = static_cast<std::size_t>(
            std::ceil(static_cast<double>(cfg.epochs) * weight[e] / w_max));
    std::vector<std::size_t> next_k(heads.size(), 0);

    std::mt19937_64 rng(cfg.seed);
    RunResult out;
    out.embedding = y0;
    UmapIntendedScheme full(kx, eps);

    for (std::size_t t = 0; t < cfg.epochs; ++t) {
        if (t % cfg.record_every == 0) {
            out.loss_curve.emplace_back(t, full.loss(out.embedding));
            if (loss_probe) out.probe_curve.emplace_back(t, loss_probe->loss(out.embedding));
        }
        const double lr = lr_at(cfg, t);
        double sq_moved = 0.0;
        for (std::size_t e = 0; e < heads.size(); ++e) {
            if (next_k[e] >= fires[e]) continue;
            const std::size_t due = next_k[e] * cfg.epochs / fires[e];
            if (due != t) continue;
            ++next_k[e];
            const std::size_t i = heads[e], j = tails[e];

            double* yi = out.embedding.row(i);
            double* yj = out.embedding.row(j);
            double u = 0.0;
            for (std::size_t c = 0; c < d; ++c) {
                double diff = yi[c] - yj[c];
                u += diff * diff;
            }
            double ky = 1.0 / (1.0 + u);
            for (std::size_t c = 0; c < d; ++c) {
                double move = lr * clip4(-2.0 * ky * (yi[c] - yj[c]));
                yi[c] += move;
                yj[c] -= move;
                sq_moved += 2.0 * move * move;
            }

            for (std::size_t s = 0; s < cfg.negative_samples; ++s) {
                std::size_t r = static_cast<std::size_t>(rng() % n);
                if (r == i) continue;
                double* yr = out.embedding.row(r);
                double ur = 0.0;
                for (std::size_t c = 0; c < d; ++c) {
                    double diff = yi[c] - yr[c];
                    ur += diff * diff;
                }
                double kyr = 1.0 / (1.0 + ur);
                double coeff = 2.0 * kyr * kyr / std::max(1.0 - kyr, eps);
                for (std::size_t c = 0; c < d; ++c) {
                    double move = lr * clip4(coeff * (yi[c] - yr[c]));
                    yi[c] += move;
                    sq_moved += move * move;
                }
            }
        }
        if (t % cfg.record_every == 0)
            out.grad_norm_curve.emplace_back(t, std::sqrt(sq_moved));
        if (!out.embedding.all_finite())
            detail::fail(detail::str_printf(
                "umap_effective_optimize: non-finite embedding at epoch %zu", t));
    }
    out.loss_curve.emplace_back(cfg.epochs, full.loss(out.embedding));
    out.grad_norm_curve.emplace_back(cfg.epochs, 0.0);
    if (loss_probe) out.probe_curve.emplace_back(cfg.epochs, loss_probe->loss(out.embedding));
    out.wall_time = seconds_since(start);
    return out;
}

LowRankGradient lowrank_pca_gradient(const SymMatrix& gx, const DataMatrix& y,
                                     std::size_t rank, double perturb, std::uint64_t seed) {
    const std::size_t n = gx.size();
    require(rank >= 1 && rank <= n, "lowrank_pca_gradient: rank must lie in [1, n]");
    require(perturb >= 0.0, "lowrank_pca_gradient: perturb must be nonnegative");
    require(y.rows() == n, "lowrank_pca_gradient: gram/embedding size mismatch");

    EigenPairs eig = sym_eigh(gx, n, EigenEnd::kLargest);
    SymMatrix truncated = gx;  // rank n keeps G_X itself, no reconstruction error
    if (rank < n) {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j) {
                double s = 0.0;
                for (std::size_t c = 0; c < rank; ++c)
                    s += eig.values[c] * eig.vectors(i, c) * eig.vectors(j, c);
                truncated.set(i, j, s);
            }
    }
    double tail_sq = 0.0;
    for (std::size_t c = rank; c < n; ++c) tail_sq += eig.values[c] * eig.values[c];

    SymMatrix approx = truncated;
    if (perturb > 0.0 && tail_sq > 0.0) {
        // Seeded symmetric direction R; beta solves ||T - beta R||_F^2 =
        // (1 + perturb) ||T||_F^2 exactly, with T = G_X - truncation.
        std::mt19937_64 rng(seed);
        std::normal_distribution<double> gauss;
        SymMatrix r(n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j) r.set(i, j, gauss(rng));
        SymMatrix t(n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j) t.set(i, j, gx(i, j) - truncated(i, j));
        const double tr = frob_inner(t, r);
        const double rr = frob_inner(r, r);
        const double beta = (tr + std::sqrt(tr * tr + rr * perturb * tail_sq)) / rr;
        SymMatrix shifted(n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j)
                shifted.set(i, j, truncated(i, j) + beta * r(i, j));
        approx = shifted;
    }

    LowRankGradient out;
    out.gradient = PcaScheme("pca", double_center(approx)).gradient(y);

    SymMatrix gx_c = double_center(gx);
    DataMatrix exact = PcaScheme("pca", gx_c).gradient(y);
    out.alignment = frob_inner(exact, out.gradient);

    const double lam1 = eig.values.front();
    const double lamk = eig.values[rank - 1];
    SymMatrix gy = gram(y);
    double lhs = 0.0;  // raw ||G_X - G_Y||_F^2 (no centering)
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            double dij = gx(i, j) - gy(i, j);
            lhs += dij * dij;
        }
    if (tail_sq == 0.0) {
        out.condition_holds = true;
    } else if (lamk <= 0.0) {
        out.condition_holds = false;
    } else {
        out.condition_holds = lhs >= (1.0 + perturb) * (lam1 / lamk) * tail_sq;
    }
    return out;
}

DataMatrix make_initial_embedding(const RunConfig& cfg, std::size_t n, std::size_t d,
                                  const SymMatrix* affinity, const DataMatrix* provided) {
    require(n >= 1 && d >= 1, "make_initial_embedding: empty shape");
    switch (cfg.init) {
        case InitKind::kRandomGaussian: {
            std::mt19937_64 rng(cfg.seed);
            std::normal_distribution<double> gauss(0.0, cfg.init_scale);
            DataMatrix y(n, d);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < d; ++j) y(i, j) = gauss(rng);
            return y;
        }
        case InitKind::kLaplacianEigenmaps: {
            require(affinity != nullptr,
                    "make_initial_embedding: laplacian_eigenmaps needs an affinity matrix");
            return laplacian_eigenmaps_init(*affinity, d, cfg.seed);
        }
        case InitKind::kProvided: {
            require(provided != nullptr, "make_initial_embedding: no provided embedding");
            require(provided->rows() == n && provided->cols() == d,
                    "make_initial_embedding: provided embedding has the wrong shape");
            return *provided;
        }
    }
    detail::fail("make_initial_embedding: unreachable");
}

}  // namespace ardr
