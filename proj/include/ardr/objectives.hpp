#pragma once

#include <memory>
#include <string>

#include "ardr/kernels.hpp"
#include "ardr/matrix.hpp"
#include "ardr/neighbors.hpp"

namespace ardr {

// A named objective in the common pairwise gradient form
//   grad_i = -c * sum_j l_ij * delta_ij * (y_i - y_j),
// where l_ij is the attraction/repulsion scalar field and delta_ij the output
// kernel derivative on the squared distance (identically -1 for the linear
// kernel). gradient() may use a faster equivalent route; gradient_pairwise()
// always evaluates the literal sum above, so the two stay comparable.
class GradientScheme {
public:
    virtual ~GradientScheme() = default;

    const std::string& name() const { return name_; }
    double pair_constant() const { return c_; }

    virtual double loss(const DataMatrix& y) const = 0;
    virtual DataMatrix gradient(const DataMatrix& y) const;
    virtual SymMatrix pair_scalars(const DataMatrix& y) const = 0;
    virtual SymMatrix kernel_derivs(const DataMatrix& y) const = 0;

    DataMatrix gradient_pairwise(const DataMatrix& y) const;

protected:
    GradientScheme(std::string name, double c) : name_(std::move(name)), c_(c) {}

private:
    std::string name_;
    double c_;
};

// ||target - C G_Y C||_F^2 with the linear output kernel. `name` tags the
// target's provenance: pca (centered Gram), cmds or isomap (cmds_target of
// squared dissimilarities).
class PcaScheme : public GradientScheme {
public:
    PcaScheme(std::string name, SymMatrix target);
    double loss(const DataMatrix& y) const override;
    DataMatrix gradient(const DataMatrix& y) const override;  // matrix form -4 L Y
    SymMatrix pair_scalars(const DataMatrix& y) const override;
    SymMatrix kernel_derivs(const DataMatrix& y) const override;
    const SymMatrix& target() const { return target_; }

private:
    SymMatrix target_;
};

class DkPcaScheme : public GradientScheme {
public:
    explicit DkPcaScheme(SymMatrix kx_centered);
    double loss(const DataMatrix& y) const override;
    DataMatrix gradient(const DataMatrix& y) const override;
    SymMatrix pair_scalars(const DataMatrix& y) const override;
    SymMatrix kernel_derivs(const DataMatrix& y) const override;

private:
    SymMatrix kx_c_;
};

class DkLleScheme : public GradientScheme {
public:
    explicit DkLleScheme(const WeightMatrix& w);
    double loss(const DataMatrix& y) const override;
    DataMatrix gradient(const DataMatrix& y) const override;
    SymMatrix pair_scalars(const DataMatrix& y) const override;
    SymMatrix kernel_derivs(const DataMatrix& y) const override;
    const SymMatrix& m() const { return m_; }

private:
    SymMatrix m_;       // (I-W)^T (I-W)
    SymMatrix scalar_;  // W + W^T - W^T W
};

class UmapIntendedScheme : public GradientScheme {
public:
    UmapIntendedScheme(SymMatrix kx, double eps);
    double loss(const DataMatrix& y) const override;
    DataMatrix gradient(const DataMatrix& y) const override;
    SymMatrix pair_scalars(const DataMatrix& y) const override;
    SymMatrix kernel_derivs(const DataMatrix& y) const override;

private:
    SymMatrix kx_;
    double eps_;
};

// Free-function forms of the scheme losses and gradients.
double pca_loss(const SymMatrix& gx_c, const DataMatrix& y);
DataMatrix pca_gradient(const SymMatrix& gx_c, const DataMatrix& y);
DataMatrix pca_gradient_pairwise(const SymMatrix& gx_c, const DataMatrix& y);

// -1/2 C D C for a squared-dissimilarity matrix (zero diagonal enforced).
SymMatrix cmds_target(const SymMatrix& sq_dissim);

double dkpca_loss(const SymMatrix& kx_c, const DataMatrix& y, const OutputKernel& k);
DataMatrix dkpca_gradient(const SymMatrix& kx_c, const DataMatrix& y, const OutputKernel& k);

double dklle_loss(const SymMatrix& m, const DataMatrix& y, const OutputKernel& k);
DataMatrix dklle_gradient(const WeightMatrix& w, const DataMatrix& y, const OutputKernel& k);

double umap_intended_loss(const SymMatrix& kx, const DataMatrix& y, const OutputKernel& k,
                          double eps);
DataMatrix umap_intended_gradient(const SymMatrix& kx, const DataMatrix& y,
                                  const OutputKernel& k, double eps);

// Raw (uncentered) Cauchy kernel matrix of an embedding, unit diagonal.
SymMatrix cauchy_kernel_matrix(const DataMatrix& y);

}  // namespace ardr
