#include "ardr/objectives.hpp"

#include <algorithm>
#include <cmath>

namespace ardr {

using detail::require;

namespace {

const OutputKernel kCauchy{OutputKernelKind::kCauchy};

double sq_dist_rows(const DataMatrix& y, std::size_t i, std::size_t j) {
    const double* yi = y.row(i);
    const double* yj = y.row(j);
    double u = 0.0;
    for (std::size_t t = 0; t < y.cols(); ++t) {
        double diff = yi[t] - yj[t];
        u += diff * diff;
    }
    return u;
}

// L = target - C G_Y C, the shared pairwise scalar of the linear-kernel
// schemes.
SymMatrix linear_residual(const SymMatrix& target, const DataMatrix& y) {
    require(target.size() == y.rows(), "pca: target/embedding size mismatch");
    SymMatrix gy_c = double_center(gram(y));
    SymMatrix l(target.size());
    for (std::size_t i = 0; i < target.size(); ++i)
        for (std::size_t j = i; j < target.size(); ++j)
            l.set(i, j, target(i, j) - gy_c(i, j));
    return l;
}

}  // namespace

SymMatrix cauchy_kernel_matrix(const DataMatrix& y) {
    const std::size_t n = y.rows();
    SymMatrix k(n);
    for (std::size_t i = 0; i < n; ++i) {
        k.set(i, i, 1.0);
        for (std::size_t j = i + 1; j < n; ++j)
            k.set(i, j, 1.0 / (1.0 + sq_dist_rows(y, i, j)));
    }
    return k;
}

DataMatrix GradientScheme::gradient(const DataMatrix& y) const { return gradient_pairwise(y); }

DataMatrix GradientScheme::gradient_pairwise(const DataMatrix& y) const {
    const std::size_t n = y.rows(), d = y.cols();
    SymMatrix l = pair_scalars(y);
    SymMatrix delta = kernel_derivs(y);
    DataMatrix g(n, d);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            double coeff = -c_ * l(i, j) * delta(i, j);
            for (std::size_t t = 0; t < d; ++t) {
                double diff = y(i, t) - y(j, t);
                g(i, t) += coeff * diff;
                g(j, t) -= coeff * diff;
            }
        }
    return g;
}

PcaScheme::PcaScheme(std::string name, SymMatrix target)
    : GradientScheme(std::move(name), 4.0), target_(std::move(target)) {}

double PcaScheme::loss(const DataMatrix& y) const {
    SymMatrix l = linear_residual(target_, y);
    return frob_inner(l, l);
}

DataMatrix PcaScheme::gradient(const DataMatrix& y) const {
    const std::size_t n = y.rows(), d = y.cols();
    SymMatrix l = linear_residual(target_, y);
    DataMatrix g(n, d);
    for (std::size_t i = 0; i < n; ++i) {
        const double* li = l.row(i);
        for (std::size_t j = 0; j < n; ++j) {
            const double* yj = y.row(j);
            double coeff = -4.0 * li[j];
            for (std::size_t t = 0; t < d; ++t) g(i, t) += coeff * yj[t];
        }
    }
    return g;
}

SymMatrix PcaScheme::pair_scalars(const DataMatrix& y) const {
    return linear_residual(target_, y);
}

SymMatrix PcaScheme::kernel_derivs(const DataMatrix& y) const {
    return SymMatrix(y.rows(), -1.0);
}

DkPcaScheme::DkPcaScheme(SymMatrix kx_centered)
    : GradientScheme("dkpca", 8.0), kx_c_(std::move(kx_centered)) {}

double DkPcaScheme::loss(const DataMatrix& y) const {
    SymMatrix l = pair_scalars(y);
    return frob_inner(l, l);
}

DataMatrix DkPcaScheme::gradient(const DataMatrix& y) const {
    const std::size_t n = y.rows(), d = y.cols();
    SymMatrix l = pair_scalars(y);
    DataMatrix g(n, d);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            double ky = 1.0 / (1.0 + sq_dist_rows(y, i, j));
            double coeff = -8.0 * l(i, j) * (-ky * ky);
            for (std::size_t t = 0; t < d; ++t) {
                double diff = y(i, t) - y(j, t);
                g(i, t) += coeff * diff;
                g(j, t) -= coeff * diff;
            }
        }
    return g;
}

SymMatrix DkPcaScheme::pair_scalars(const DataMatrix& y) const {
    require(kx_c_.size() == y.rows(), "dkpca: kernel/embedding size mismatch");
    SymMatrix ky_c = double_center(cauchy_kernel_matrix(y));
    SymMatrix l(kx_c_.size());
    for (std::size_t i = 0; i < l.size(); ++i)
        for (std::size_t j = i; j < l.size(); ++j) l.set(i, j, kx_c_(i, j) - ky_c(i, j));
    return l;
}

SymMatrix DkPcaScheme::kernel_derivs(const DataMatrix& y) const {
    const std::size_t n = y.rows();
    SymMatrix delta(n);
    for (std::size_t i = 0; i < n; ++i) {
        delta.set(i, i, -1.0);
        for (std::size_t j = i + 1; j < n; ++j) {
            double ky = 1.0 / (1.0 + sq_dist_rows(y, i, j));
            delta.set(i, j, -ky * ky);
        }
    }
    return delta;
}

DkLleScheme::DkLleScheme(const WeightMatrix& w)
    : GradientScheme("dklle", 4.0), m_(m_matrix(w)), scalar_(lle_scalar_matrix(w)) {}

double DkLleScheme::loss(const DataMatrix& y) const { return dklle_loss(m_, y, kCauchy); }

DataMatrix DkLleScheme::gradient(const DataMatrix& y) const {
    require(m_.size() == y.rows(), "dklle: weight/embedding size mismatch");
    const std::size_t n = y.rows(), d = y.cols();
    const double inv_n = 1.0 / static_cast<double>(n);
    DataMatrix g(n, d);
    for (std::size_t i = 0; i < n; ++i) {
        const double* si = scalar_.row(i);
        const double* yi = y.row(i);
        for (std::size_t j = i + 1; j < n; ++j) {
            const double* yj = y.row(j);
            double u = 0.0;
            for (std::size_t t = 0; t < d; ++t) {
                double diff = yi[t] - yj[t];
                u += diff * diff;
            }
            double ky = 1.0 / (1.0 + u);
            double coeff = -4.0 * (si[j] - inv_n) * (-ky * ky);
            for (std::size_t t = 0; t < d; ++t) {
                double diff = yi[t] - yj[t];
                g(i, t) += coeff * diff;
                g(j, t) -= coeff * diff;
            }
        }
    }
    return g;
}

SymMatrix DkLleScheme::pair_scalars(const DataMatrix& y) const {
    const std::size_t n = y.rows();
    require(m_.size() == n, "dklle: weight/embedding size mismatch");
    const double inv_n = 1.0 / static_cast<double>(n);
    SymMatrix l(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) l.set(i, j, scalar_(i, j) - inv_n);
    return l;
}

SymMatrix DkLleScheme::kernel_derivs(const DataMatrix& y) const {
    const std::size_t n = y.rows();
    SymMatrix delta(n);
    for (std::size_t i = 0; i < n; ++i) {
        delta.set(i, i, -1.0);
        for (std::size_t j = i + 1; j < n; ++j) {
            double ky = 1.0 / (1.0 + sq_dist_rows(y, i, j));
            delta.set(i, j, -ky * ky);
        }
    }
    return delta;
}

UmapIntendedScheme::UmapIntendedScheme(SymMatrix kx, double eps)
    : GradientScheme("umap_intended", 4.0), kx_(std::move(kx)), eps_(eps) {
    require(eps_ > 0.0, "umap_intended: eps must be positive");
    for (double v : kx_.values())
        require(v >= 0.0 && v <= 1.0, "umap_intended: K_X entries must lie in [0,1]");
}

double UmapIntendedScheme::loss(const DataMatrix& y) const {
    return umap_intended_loss(kx_, y, kCauchy, eps_);
}

DataMatrix UmapIntendedScheme::gradient(const DataMatrix& y) const {
    return umap_intended_gradient(kx_, y, kCauchy, eps_);
}

SymMatrix UmapIntendedScheme::pair_scalars(const DataMatrix& y) const {
    require(kx_.size() == y.rows(), "umap_intended: kernel/embedding size mismatch");
    const std::size_t n = y.rows();
    SymMatrix l(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            double ky = 1.0 / (1.0 + sq_dist_rows(y, i, j));
            double kx = kx_(i, j);
            l.set(i, j, kx / ky - (1.0 - kx) / std::max(1.0 - ky, eps_));
        }
    return l;
}

SymMatrix UmapIntendedScheme::kernel_derivs(const DataMatrix& y) const {
    const std::size_t n = y.rows();
    SymMatrix delta(n);
    for (std::size_t i = 0; i < n; ++i) {
        delta.set(i, i, -1.0);
        for (std::size_t j = i + 1; j < n; ++j) {
            double ky = 1.0 / (1.0 + sq_dist_rows(y, i, j));
            delta.set(i, j, -ky * ky);
        }
    }
    return delta;
}

double pca_loss(const SymMatrix& gx_c, const DataMatrix& y) {
    SymMatrix l = linear_residual(gx_c, y);
    return frob_inner(l, l);
}

DataMatrix pca_gradient(const SymMatrix& gx_c, const DataMatrix& y) {
    return PcaScheme("pca", gx_c).gradient(y);
}

DataMatrix pca_gradient_pairwise(const SymMatrix& gx_c, const DataMatrix& y) {
    return PcaScheme("pca", gx_c).gradient_pairwise(y);
}

SymMatrix cmds_target(const SymMatrix& sq_dissim) {
    const std::size_t n = sq_dissim.size();
    for (std::size_t i = 0; i < n; ++i)
        require(sq_dissim(i, i) == 0.0,
                "cmds_target: squared-dissimilarity matrix must have zero diagonal");
    SymMatrix b = double_center(sq_dissim);
    SymMatrix out(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) out.set(i, j, -0.5 * b(i, j));
    return out;
}

double dkpca_loss(const SymMatrix& kx_c, const DataMatrix& y, const OutputKernel& k) {
    require(k.kind == OutputKernelKind::kCauchy,
            "dkpca_loss: linear kernel reduces to pca_loss; use that instead");
    return DkPcaScheme(kx_c).loss(y);
}

DataMatrix dkpca_gradient(const SymMatrix& kx_c, const DataMatrix& y, const OutputKernel& k) {
    require(k.kind == OutputKernelKind::kCauchy,
            "dkpca_gradient: linear kernel reduces to pca_gradient; use that instead");
    return DkPcaScheme(kx_c).gradient(y);
}

double dklle_loss(const SymMatrix& m, const DataMatrix& y, const OutputKernel& k) {
    require(k.kind == OutputKernelKind::kCauchy, "dklle_loss: output kernel must be cauchy");
    require(m.size() == y.rows(), "dklle_loss: M/embedding size mismatch");
    const std::size_t n = y.rows();
    SymMatrix ky = cauchy_kernel_matrix(y);
    double trace_term = frob_inner(m, ky);  // Tr(M K_Y), both symmetric
    double penalty = 0.0;
    for (double v : ky.values()) penalty += v;
    penalty /= static_cast<double>(n);
    return trace_term + penalty;
}

DataMatrix dklle_gradient(const WeightMatrix& w, const DataMatrix& y, const OutputKernel& k) {
    require(k.kind == OutputKernelKind::kCauchy, "dklle_gradient: output kernel must be cauchy");
    return DkLleScheme(w).gradient(y);
}

double umap_intended_loss(const SymMatrix& kx, const DataMatrix& y, const OutputKernel& k,
                          double eps) {
    require(k.kind == OutputKernelKind::kCauchy,
            "umap_intended_loss: output kernel must be cauchy");
    require(kx.size() == y.rows(), "umap_intended_loss: kernel/embedding size mismatch");
    require(eps > 0.0, "umap_intended_loss: eps must be positive");
    const std::size_t n = y.rows();
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            double ky = 1.0 / (1.0 + sq_dist_rows(y, i, j));
            double kxv = kx(i, j);
            // Below eps the log is continued linearly (slope 1/eps), the
            // exact antiderivative of the gradient's clamped repulsion, so
            // finite differences of this loss reproduce the gradient field.
            double w = 1.0 - ky;
            double guarded = w >= eps ? std::log(w) : std::log(eps) + (w - eps) / eps;
            double term = -kxv * std::log(ky) - (1.0 - kxv) * guarded;
            total += 2.0 * term;  // both ordered pairs
        }
    return total;
}

DataMatrix umap_intended_gradient(const SymMatrix& kx, const DataMatrix& y,
                                  const OutputKernel& k, double eps) {
    require(k.kind == OutputKernelKind::kCauchy,
            "umap_intended_gradient: output kernel must be cauchy");
    require(kx.size() == y.rows(), "umap_intended_gradient: kernel/embedding size mismatch");
    require(eps > 0.0, "umap_intended_gradient: eps must be positive");
    const std::size_t n = y.rows(), d = y.cols();
    DataMatrix g(n, d);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            double u = sq_dist_rows(y, i, j);
            double ky = 1.0 / (1.0 + u);
            double kxv = kx(i, j);
            double l = kxv / ky - (1.0 - kxv) / std::max(1.0 - ky, eps);
            double coeff = -4.0 * l * (-ky * ky);
            for (std::size_t t = 0; t < d; ++t) {
                double diff = y(i, t) - y(j, t);
                g(i, t) += coeff * diff;
                g(j, t) -= coeff * diff;
            }
        }
    return g;
}

}  // namespace ardr
