#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace ardr {

// Dense row-major matrix of doubles: datasets (n x D), embeddings (n x d),
// gradient fields.
class DataMatrix {
public:
    DataMatrix() = default;
    DataMatrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), v_(rows * cols, fill) {}

    static DataMatrix from_rows(std::initializer_list<std::initializer_list<double>> rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return v_.empty(); }

    double& operator()(std::size_t i, std::size_t j) { return v_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return v_[i * cols_ + j]; }
    double* row(std::size_t i) { return v_.data() + i * cols_; }
    const double* row(std::size_t i) const { return v_.data() + i * cols_; }
    std::vector<double>& values() { return v_; }
    const std::vector<double>& values() const { return v_; }

    bool all_finite() const;
    double frob_norm() const;

    bool operator==(const DataMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && v_ == o.v_;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> v_;
};

// Symmetric n x n matrix, dense storage. from_dense validates symmetry within
// an absolute tolerance of 1e-12 and averages the two triangles so lookups
// are exactly symmetric afterwards. set() writes both mirror entries.
class SymMatrix {
public:
    SymMatrix() = default;
    explicit SymMatrix(std::size_t n, double fill = 0.0) : n_(n), v_(n * n, fill) {}

    static SymMatrix from_dense(const std::vector<double>& full, std::size_t n,
                                double tol = 1e-12);
    static SymMatrix from_rows(std::initializer_list<std::initializer_list<double>> rows);
    static SymMatrix identity(std::size_t n);

    std::size_t size() const { return n_; }
    double operator()(std::size_t i, std::size_t j) const { return v_[i * n_ + j]; }
    void set(std::size_t i, std::size_t j, double x) {
        v_[i * n_ + j] = x;
        v_[j * n_ + i] = x;
    }
    void add(std::size_t i, std::size_t j, double x) {
        v_[i * n_ + j] += x;
        if (i != j) v_[j * n_ + i] += x;
    }
    const double* row(std::size_t i) const { return v_.data() + i * n_; }
    const std::vector<double>& values() const { return v_; }

    bool all_finite() const;
    double frob_norm() const;

private:
    std::size_t n_ = 0;
    std::vector<double> v_;
};

// Eigenpairs of a symmetric matrix: eigenvalues sorted by the requested end
// (descending for largest, ascending for smallest), eigenvectors as unit
// columns of `vectors` in matching order.
struct EigenPairs {
    std::vector<double> values;
    DataMatrix vectors;
};

enum class EigenEnd { kLargest, kSmallest };

enum class Metric { kEuclideanSq, kL1 };

Metric metric_from_string(const std::string& s);
std::string metric_to_string(Metric m);

// Subtract the column means so every column of the result sums to zero.
DataMatrix center_rows(const DataMatrix& x);

// Gram matrix X X^T.
SymMatrix gram(const DataMatrix& x);

// Pairwise dissimilarities: squared Euclidean distances for kEuclideanSq,
// plain (unsquared) l1 distances for kL1. Zero diagonal.
SymMatrix dist_matrix(const DataMatrix& x, Metric metric);

// B = C A C with C = I - (1/n) 11^T, computed by subtracting row means,
// column means and adding back the grand mean.
SymMatrix double_center(const SymMatrix& a);

// Cyclic Jacobi eigensolver. Rotations sweep the upper triangle in a fixed
// order until the off-diagonal Frobenius norm falls below 1e-10 * ||A||_F,
// capped at 100 sweeps (throws with a residual report beyond the cap).
EigenPairs sym_eigh(const SymMatrix& a, std::size_t count, EigenEnd end);

// min over orthogonal O of ||Y O - Yref||_F / ||Yref||_F. Both inputs must be
// column-centered; only the singular values of Y^T Yref are needed, obtained
// from the symmetric embedding [[0, M], [M^T, 0]].
double procrustes_residual(const DataMatrix& y, const DataMatrix& yref);

double frob_inner(const SymMatrix& a, const SymMatrix& b);
double frob_inner(const DataMatrix& a, const DataMatrix& b);

namespace detail {
[[noreturn]] void fail(const std::string& msg);
void require(bool cond, const std::string& msg);
std::string str_printf(const char* fmt, ...);
}  // namespace detail

}  // namespace ardr
