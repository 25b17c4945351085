#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "ardr/matrix.hpp"
#include "ardr/neighbors.hpp"
#include "ardr/objectives.hpp"

namespace ardr {

enum class LrDecay { kNone, kLinearToZero };
enum class InitKind { kRandomGaussian, kLaplacianEigenmaps, kProvided };

LrDecay lr_decay_from_string(const std::string& s);
InitKind init_kind_from_string(const std::string& s);

struct RunConfig {
    std::uint64_t seed = 0;
    std::size_t epochs = 500;
    double learning_rate = 1e-3;
    LrDecay lr_decay = LrDecay::kLinearToZero;
    InitKind init = InitKind::kRandomGaussian;
    double init_scale = 1.0;            // random_gaussian standard deviation
    std::size_t negative_samples = 5;   // effective optimizer only
    std::size_t record_every = 1;
};

// Sampled curves hold (epoch, value) pairs: every record_every-th epoch is
// measured before its update, and the final embedding is always measured.
struct RunResult {
    DataMatrix embedding;
    std::vector<std::pair<std::size_t, double>> loss_curve;
    std::vector<std::pair<std::size_t, double>> grad_norm_curve;
    std::vector<std::pair<std::size_t, double>> probe_curve;  // loss_probe values
    double wall_time = 0.0;
};

// Deterministic full-batch descent: Y <- Y - lr_t * grad(Y), lr_t constant or
// decayed linearly to zero. loss_probe, when given, scores the same iterates
// under a second objective.
RunResult descend(const GradientScheme& scheme, const DataMatrix& y0, const RunConfig& cfg,
                  const GradientScheme* loss_probe = nullptr);

// UMAP's sampled optimizer: edge (i,j) with weight w fires
// ceil(epochs * w / w_max) times, evenly spaced over the epochs; each firing
// applies one clipped attraction move to both endpoints plus
// cfg.negative_samples clipped repulsion moves to the head against uniform
// random targets, in place. Single RNG stream seeded from cfg.seed.
// loss_curve records the full-batch umap_intended loss of the iterates;
// grad_norm_curve records the norm of each recorded epoch's net displacement.
RunResult umap_effective_optimize(const SymMatrix& kx, const NeighborGraph& g,
                                  const DataMatrix& y0, const RunConfig& cfg,
                                  const GradientScheme* loss_probe = nullptr);

struct LowRankGradient {
    DataMatrix gradient;      // -4 C (G'_X - G_Y) C Y
    double alignment = 0.0;   // <exact gradient, approximate gradient>_F
    bool condition_holds = false;
};

// Truncate G_X to its top-`rank` eigenpairs, add a seeded random symmetric
// perturbation scaled so ||G_X - G'_X||_F^2 = (1 + perturb) * ||G_X -
// G_X^rank||_F^2 (E = 0 when perturb = 0), and evaluate the resulting
// approximate pca gradient. condition_holds reports whether
// ||G_X - G_Y||_F^2 >= (1 + perturb) * (lambda_1/lambda_rank) * tail holds.
LowRankGradient lowrank_pca_gradient(const SymMatrix& gx, const DataMatrix& y,
                                     std::size_t rank, double perturb,
                                     std::uint64_t seed = 0);

// Initial embedding per cfg.init: seeded gaussian noise, Laplacian eigenmaps
// of `affinity`, or a copy of `provided`.
DataMatrix make_initial_embedding(const RunConfig& cfg, std::size_t n, std::size_t d,
                                  const SymMatrix* affinity = nullptr,
                                  const DataMatrix* provided = nullptr);

}  // namespace ardr
