#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "ardr/matrix.hpp"

namespace ardr {

// Exact k-nearest-neighbor lists. Row i holds the k nearest indices by the
// recorded metric, ascending by distance, ties broken toward the lower index.
struct NeighborGraph {
    std::size_t n = 0;
    std::size_t k = 0;
    Metric metric = Metric::kEuclideanSq;
    std::vector<std::uint32_t> indices;  // n*k row-major
    std::vector<double> dists;           // metric values, same layout

    std::uint32_t idx(std::size_t i, std::size_t j) const { return indices[i * k + j]; }
    double dist(std::size_t i, std::size_t j) const { return dists[i * k + j]; }
};

NeighborGraph knn_graph(const DataMatrix& x, std::size_t k, Metric metric);

// Undirected union of the directed k-NN edges, each pair (i < j) once, with
// unsquared edge lengths (square roots are taken for kEuclideanSq).
struct EdgeList {
    std::vector<std::uint32_t> heads, tails;
    std::vector<double> lengths;
    std::size_t size() const { return heads.size(); }
};
EdgeList sym_edge_list(const NeighborGraph& g);

struct GeodesicDistances {
    SymMatrix dists;     // shortest-path lengths on the symmetrized graph
    SymMatrix sq_dists;  // entry-wise squares, ready for cMDS
};
GeodesicDistances geodesic_dists(const NeighborGraph& g);

// Sparse row-stochastic LLE reconstruction weights: row i is supported on the
// k neighbors of i and sums to 1.
struct WeightMatrix {
    std::size_t n = 0;
    std::size_t k = 0;
    std::vector<std::uint32_t> cols;  // n*k row-major
    std::vector<double> w;            // same layout

    std::uint32_t col(std::size_t i, std::size_t j) const { return cols[i * k + j]; }
    double weight(std::size_t i, std::size_t j) const { return w[i * k + j]; }
};

// Solve each local constrained least-squares system C w = 1 on the neighbor
// differences, with Tikhonov term reg * trace(C) * I (reg * I when the trace
// vanishes), then normalize to sum 1.
WeightMatrix lle_weights(const DataMatrix& x, const NeighborGraph& g, double reg);

// Kernelized variant: local Gram entries come from a precomputed input kernel,
// C_jl = k(x_i,x_i) - k(x_i,x_j) - k(x_i,x_l) + k(x_j,x_l).
WeightMatrix lle_weights_kernel(const SymMatrix& kx, const NeighborGraph& g, double reg);

// M = (I - W)^T (I - W), accumulated sparsely as I - W - W^T + W^T W.
SymMatrix m_matrix(const WeightMatrix& w);

// W + W^T - W^T W; off-diagonal entries are the negated off-diagonal of M.
SymMatrix lle_scalar_matrix(const WeightMatrix& w);

// Laplacian Eigenmaps initialization from a nonnegative affinity matrix:
// eigenvectors 2..d+1 (ascending) of I - D^{-1/2} K D^{-1/2}, sign-fixed so
// the first entry above 1e-12 magnitude is positive, each column rescaled to
// max-abs 10. Deterministic; `seed` is accepted for interface parity.
DataMatrix laplacian_eigenmaps_init(const SymMatrix& affinity, std::size_t d,
                                    std::uint64_t seed = 0);

// Connected components of the support of a symmetric nonnegative matrix.
std::vector<std::uint32_t> support_components(const SymMatrix& affinity);

}  // namespace ardr
