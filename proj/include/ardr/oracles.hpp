#pragma once

#include <functional>

#include "ardr/matrix.hpp"

namespace ardr {

// Spectral reference embedding. `spectrum` holds the eigenvalues backing each
// returned column (before any clamping); rank_deficient marks columns padded
// with zeros because the spectrum ran out of usable eigenvalues.
struct OracleEmbedding {
    DataMatrix embedding;
    std::vector<double> spectrum;
    std::string method;
    bool rank_deficient = false;
};

// Top-d eigenpairs of C G_X C, columns v_i * sqrt(lambda_i). Sign convention:
// first entry of each eigenvector above 1e-12 magnitude is positive.
// Eigenvalues at or below 1e-10 * lambda_max yield zero columns and set the
// rank_deficient flag.
OracleEmbedding pca_oracle(const DataMatrix& x, std::size_t d);

// Classical MDS on a squared-dissimilarity matrix: eigenpairs of -1/2 C D C,
// columns v_i * sqrt(max(lambda_i, 0)).
OracleEmbedding cmds_oracle(const SymMatrix& sq_dissim, std::size_t d);

// LLE output step: eigenvectors of M for the d smallest eigenvalues above the
// null threshold 1e-8 * ||M||_F, scaled by sqrt(n) so (1/n) Y^T Y = I.
OracleEmbedding lle_oracle(const SymMatrix& m, std::size_t d);

// Central finite differences of a scalar loss over every coordinate of y.
DataMatrix finite_diff_grad(const std::function<double(const DataMatrix&)>& loss,
                            const DataMatrix& y, double h);

}  // namespace ardr
