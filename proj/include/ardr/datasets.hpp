#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ardr/matrix.hpp"

namespace ardr {

// Data plus optional integer class labels (empty vector when absent).
struct Dataset {
    DataMatrix x;
    std::vector<int> labels;
};

struct SyntheticParams {
    double noise = 0.0;                 // swiss_roll ambient gaussian noise
    std::size_t extra_on_manifold = 0;  // swiss_roll noise-free surface points
    double alpha = 1.5;                 // plane_pareto tail index
    std::size_t centers = 4;            // gaussian_blobs cluster count
    double spread = 1.0;                // gaussian_blobs within-cluster sigma
};

// (t cos t, h, t sin t) with t ~ U[1.5pi, 4.5pi], h ~ U[0, 21]; the n base
// points get N(0, noise^2) ambient jitter, the extra points lie exactly on
// the surface. Labels: four equal-width t bins.
Dataset make_swiss_roll(std::size_t n, std::uint64_t seed, double noise = 0.0,
                        std::size_t extra_on_manifold = 0);

// (u, v, 0) with u, v ~ U[0, 10]. Labels: quadrants of the square.
Dataset make_plane(std::size_t n, std::uint64_t seed);

// 80% plane points plus 20% on a line rising from the plane's center.
// Labels: 0 = plane, 1 = line.
Dataset make_plane_plus_line(std::size_t n, std::uint64_t seed);

// Plane with one-sided Pareto(alpha, x_m = 1) noise on the third coordinate.
Dataset make_plane_pareto(std::size_t n, std::uint64_t seed, double alpha);

// Balanced gaussian clusters in 5 dimensions around seeded N(0, 4^2) centers.
// Labels: cluster ids, assigned round-robin.
Dataset make_gaussian_blobs(std::size_t n, std::uint64_t seed, std::size_t centers = 4,
                            double spread = 1.0);

Dataset make_synthetic(const std::string& kind, std::size_t n, std::uint64_t seed,
                       const SyntheticParams& params);

// Comma-separated values, no quoting; a non-numeric first row is treated as a
// header and skipped. label_column (0-based, -1 = none) maps distinct cell
// strings to integer ids in order of first appearance.
Dataset load_csv(const std::string& path, int label_column = -1);

// One row per line, %.17g cells (round-trips doubles exactly), no header.
void write_csv(const std::string& path, const DataMatrix& x);

// Seeded uniform subsample without replacement; original row order is kept.
Dataset subsample(const Dataset& d, std::size_t m, std::uint64_t seed);

// Per-column zero mean, unit population variance; constant columns end up
// all-zero instead of dividing by zero.
DataMatrix standardize(const DataMatrix& x);

}  // namespace ardr
