#pragma once

#include <vector>

#include "ardr/matrix.hpp"
#include "ardr/neighbors.hpp"

namespace ardr {

enum class OutputKernelKind { kLinear, kCauchy };

struct OutputKernel {
    OutputKernelKind kind = OutputKernelKind::kCauchy;
};

// Cauchy kernel value k_y(u) = 1/(1+u) on a squared distance u.
double output_kernel(const OutputKernel& k, double u);

// dk_y/du = -(1+u)^{-2} = -k_y(u)^2. The chain-rule factor 2 from
// d‖y_i-y_j‖²/dy_i lives in the schemes' constant c, not here.
double output_kernel_deriv(const OutputKernel& k, double u);

enum class InputKernelKind { kLinear, kRbfFixed, kRbfLocal };
enum class Symmetrize { kNone, kFuzzyUnion, kAverage };

struct InputKernelSpec {
    InputKernelKind kind = InputKernelKind::kRbfLocal;
    double sigma = 1.0;  // rbf_fixed bandwidth
    Symmetrize symmetrize = Symmetrize::kFuzzyUnion;
};

InputKernelKind input_kernel_kind_from_string(const std::string& s);
Symmetrize symmetrize_from_string(const std::string& s);

// Smoothed-kNN calibration per point: rho = nearest-neighbor distance, sigma
// solves sum_j exp(-max(0, d_ij - rho)/sigma) = log2(k) by 64 bisection steps
// over [1e-3, 1e3] * mean k-NN distance. `clamped` marks rows pinned at a
// bracket end; `residual` is the final target mismatch.
struct LocalScales {
    std::vector<double> rho, sigma, residual;
    std::vector<bool> clamped;
};
LocalScales smooth_knn_scales(const NeighborGraph& g);

SymMatrix input_kernel_matrix(const DataMatrix& x, const NeighborGraph& g,
                              const InputKernelSpec& spec);

// min eigenvalue / ||K||_F; negative values are legal (reported, not enforced).
double psd_diagnostic(const SymMatrix& k);

}  // namespace ardr
