#include "ardr/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <numeric>
#include <stdexcept>

namespace ardr {

namespace detail {

void fail(const std::string& msg) { throw std::runtime_error(msg); }

void require(bool cond, const std::string& msg) {
    if (!cond) throw std::invalid_argument(msg);
}

std::string str_printf(const char* fmt, ...) {
    va_list args;
    va_start(args, fmt);
    va_list copy;
    va_copy(copy, args);
    int len = std::vsnprintf(nullptr, 0, fmt, copy);
    va_end(copy);
    std::string out(static_cast<std::size_t>(len), '\0');
    std::vsnprintf(out.data(), out.size() + 1, fmt, args);
    va_end(args);
    return out;
}

}  // namespace detail

using detail::require;
using detail::str_printf;

DataMatrix DataMatrix::from_rows(std::initializer_list<std::initializer_list<double>> rows) {
    DataMatrix m(rows.size(), rows.size() ? rows.begin()->size() : 0);
    std::size_t i = 0;
    for (const auto& r : rows) {
        require(r.size() == m.cols(), "from_rows: ragged rows");
        std::copy(r.begin(), r.end(), m.row(i++));
    }
    return m;
}

bool DataMatrix::all_finite() const {
    return std::all_of(v_.begin(), v_.end(), [](double x) { return std::isfinite(x); });
}

double DataMatrix::frob_norm() const {
    return std::sqrt(std::inner_product(v_.begin(), v_.end(), v_.begin(), 0.0));
}

SymMatrix SymMatrix::from_dense(const std::vector<double>& full, std::size_t n, double tol) {
    require(full.size() == n * n, "from_dense: size mismatch");
    SymMatrix s(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            double a = full[i * n + j];
            double b = full[j * n + i];
            if (std::abs(a - b) > tol)
                detail::fail(str_printf(
                    "symmetric matrix violated at (%zu,%zu): |%.17g - %.17g| > %g", i, j, a, b,
                    tol));
            s.set(i, j, 0.5 * (a + b));
        }
    }
    return s;
}

SymMatrix SymMatrix::from_rows(std::initializer_list<std::initializer_list<double>> rows) {
    std::size_t n = rows.size();
    std::vector<double> full;
    full.reserve(n * n);
    for (const auto& r : rows) {
        require(r.size() == n, "from_rows: not square");
        full.insert(full.end(), r.begin(), r.end());
    }
    return from_dense(full, n);
}

SymMatrix SymMatrix::identity(std::size_t n) {
    SymMatrix s(n);
    for (std::size_t i = 0; i < n; ++i) s.set(i, i, 1.0);
    return s;
}

bool SymMatrix::all_finite() const {
    return std::all_of(v_.begin(), v_.end(), [](double x) { return std::isfinite(x); });
}

double SymMatrix::frob_norm() const {
    return std::sqrt(std::inner_product(v_.begin(), v_.end(), v_.begin(), 0.0));
}

Metric metric_from_string(const std::string& s) {
    if (s == "euclidean_sq") return Metric::kEuclideanSq;
    if (s == "l1") return Metric::kL1;
    throw std::invalid_argument("unknown metric: " + s);
}

std::string metric_to_string(Metric m) {
    return m == Metric::kEuclideanSq ? "euclidean_sq" : "l1";
}

DataMatrix center_rows(const DataMatrix& x) {
    const std::size_t n = x.rows(), d = x.cols();
    require(n > 0, "center_rows: empty matrix");
    std::vector<double> mean(d, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < d; ++j) mean[j] += x(i, j);
    for (double& m : mean) m /= static_cast<double>(n);
    DataMatrix out(n, d);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < d; ++j) out(i, j) = x(i, j) - mean[j];
    return out;
}

SymMatrix gram(const DataMatrix& x) {
    const std::size_t n = x.rows(), d = x.cols();
    SymMatrix g(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double* xi = x.row(i);
        for (std::size_t j = i; j < n; ++j) {
            const double* xj = x.row(j);
            double s = 0.0;
            for (std::size_t t = 0; t < d; ++t) s += xi[t] * xj[t];
            g.set(i, j, s);
        }
    }
    return g;
}

SymMatrix dist_matrix(const DataMatrix& x, Metric metric) {
    const std::size_t n = x.rows(), d = x.cols();
    SymMatrix dm(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double* xi = x.row(i);
        for (std::size_t j = i + 1; j < n; ++j) {
            const double* xj = x.row(j);
            double s = 0.0;
            if (metric == Metric::kEuclideanSq) {
                for (std::size_t t = 0; t < d; ++t) {
                    double diff = xi[t] - xj[t];
                    s += diff * diff;
                }
            } else {
                for (std::size_t t = 0; t < d; ++t) s += std::abs(xi[t] - xj[t]);
            }
            dm.set(i, j, s);
        }
    }
    return dm;
}

SymMatrix double_center(const SymMatrix& a) {
    const std::size_t n = a.size();
    require(n > 0, "double_center: empty matrix");
    std::vector<double> rmean(n, 0.0);
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double s = 0.0;
        const double* r = a.row(i);
        for (std::size_t j = 0; j < n; ++j) s += r[j];
        rmean[i] = s / static_cast<double>(n);
        total += s;
    }
    total /= static_cast<double>(n) * static_cast<double>(n);
    SymMatrix out(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j)
            out.set(i, j, a(i, j) - rmean[i] - rmean[j] + total);
    return out;
}

namespace {

// One cyclic sweep of Jacobi rotations over the upper triangle, the
// eigenvector accumulator V updated in step. Classic threshold scheme: early
// sweeps skip elements below a coarse threshold, later sweeps zero elements
// too small to matter against the local diagonal.
void jacobi_sweep(std::vector<double>& a, std::vector<double>& V, std::size_t n, int sweep) {
    double off_sum = 0.0;
    for (std::size_t p = 0; p < n; ++p)
        for (std::size_t q = p + 1; q < n; ++q) off_sum += std::abs(a[p * n + q]);
    const double thresh =
        sweep < 3 ? 0.2 * off_sum / (static_cast<double>(n) * static_cast<double>(n)) : 0.0;

    for (std::size_t p = 0; p + 1 < n; ++p) {
        for (std::size_t q = p + 1; q < n; ++q) {
            double apq = a[p * n + q];
            double g = 100.0 * std::abs(apq);
            if (sweep > 3 && std::abs(a[p * n + p]) + g == std::abs(a[p * n + p]) &&
                std::abs(a[q * n + q]) + g == std::abs(a[q * n + q])) {
                a[p * n + q] = 0.0;
                continue;
            }
            if (std::abs(apq) <= thresh) continue;
            double h = a[q * n + q] - a[p * n + p];
            double t;
            if (std::abs(h) + g == std::abs(h)) {
                t = apq / h;
            } else {
                double theta = 0.5 * h / apq;
                t = 1.0 / (std::abs(theta) + std::sqrt(1.0 + theta * theta));
                if (theta < 0.0) t = -t;
            }
            double c = 1.0 / std::sqrt(1.0 + t * t);
            double s = t * c;
            double tau = s / (1.0 + c);
            double hpq = t * apq;
            a[p * n + p] -= hpq;
            a[q * n + q] += hpq;
            a[p * n + q] = 0.0;
            auto rotate = [&](double& x, double& y) {
                double gx = x, hy = y;
                x = gx - s * (hy + gx * tau);
                y = hy + s * (gx - hy * tau);
            };
            for (std::size_t i = 0; i < p; ++i) rotate(a[i * n + p], a[i * n + q]);
            for (std::size_t i = p + 1; i < q; ++i) rotate(a[p * n + i], a[i * n + q]);
            for (std::size_t i = q + 1; i < n; ++i) rotate(a[p * n + i], a[q * n + i]);
            for (std::size_t i = 0; i < n; ++i) rotate(V[i * n + p], V[i * n + q]);
        }
    }
}

double offdiag_frob(const std::vector<double>& a, std::size_t n) {
    double s = 0.0;
    for (std::size_t p = 0; p < n; ++p)
        for (std::size_t q = p + 1; q < n; ++q) s += 2.0 * a[p * n + q] * a[p * n + q];
    return std::sqrt(s);
}

}  // namespace

EigenPairs sym_eigh(const SymMatrix& A, std::size_t count, EigenEnd end) {
    const std::size_t n = A.size();
    require(n > 0, "sym_eigh: empty matrix");
    require(count >= 1 && count <= n, "sym_eigh: count out of range");
    require(A.all_finite(), "sym_eigh: non-finite input");

    std::vector<double> a = A.values();
    std::vector<double> V(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) V[i * n + i] = 1.0;

    const double tol = 1e-10 * A.frob_norm();
    const int max_sweeps = 100;
    double off = offdiag_frob(a, n);
    int sweep = 0;
    while (off > tol && sweep < max_sweeps) {
        jacobi_sweep(a, V, n, sweep);
        off = offdiag_frob(a, n);
        ++sweep;
    }
    if (off > tol)
        detail::fail(str_printf(
            "sym_eigh: Jacobi did not converge in %d sweeps (off-diagonal %.3e > tol %.3e)",
            max_sweeps, off, tol));

    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    if (end == EigenEnd::kLargest) {
        std::stable_sort(order.begin(), order.end(), [&](std::size_t l, std::size_t r) {
            return a[l * n + l] > a[r * n + r];
        });
    } else {
        std::stable_sort(order.begin(), order.end(), [&](std::size_t l, std::size_t r) {
            return a[l * n + l] < a[r * n + r];
        });
    }

    EigenPairs out;
    out.values.resize(count);
    out.vectors = DataMatrix(n, count);
    for (std::size_t c = 0; c < count; ++c) {
        std::size_t src = order[c];
        out.values[c] = a[src * n + src];
        for (std::size_t i = 0; i < n; ++i) out.vectors(i, c) = V[i * n + src];
    }
    return out;
}

double procrustes_residual(const DataMatrix& y, const DataMatrix& yref) {
    require(y.rows() == yref.rows() && y.cols() == yref.cols(),
            "procrustes_residual: shape mismatch");
    const std::size_t n = y.rows(), d = y.cols();
    require(n > 0 && d > 0, "procrustes_residual: empty input");
    double ref_sq = 0.0, y_sq = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            ref_sq += yref(i, j) * yref(i, j);
            y_sq += y(i, j) * y(i, j);
        }
    require(ref_sq > 0.0, "procrustes_residual: reference embedding has zero norm");

    // M = Y^T Yref, then sum of singular values = sum of positive eigenvalues
    // of [[0, M], [M^T, 0]].
    DataMatrix m(d, d);
    for (std::size_t r = 0; r < d; ++r)
        for (std::size_t c = 0; c < d; ++c) {
            double s = 0.0;
            for (std::size_t i = 0; i < n; ++i) s += y(i, r) * yref(i, c);
            m(r, c) = s;
        }
    SymMatrix h(2 * d);
    for (std::size_t r = 0; r < d; ++r)
        for (std::size_t c = 0; c < d; ++c) h.set(r, d + c, m(r, c));
    EigenPairs eig = sym_eigh(h, 2 * d, EigenEnd::kLargest);
    double nuclear = 0.0;
    for (double lam : eig.values)
        if (lam > 0.0) nuclear += lam;
    double resid_sq = std::max(0.0, y_sq + ref_sq - 2.0 * nuclear);
    return std::sqrt(resid_sq) / std::sqrt(ref_sq);
}

double frob_inner(const SymMatrix& a, const SymMatrix& b) {
    require(a.size() == b.size(), "frob_inner: size mismatch");
    return std::inner_product(a.values().begin(), a.values().end(), b.values().begin(), 0.0);
}

double frob_inner(const DataMatrix& a, const DataMatrix& b) {
    require(a.rows() == b.rows() && a.cols() == b.cols(), "frob_inner: shape mismatch");
    return std::inner_product(a.values().begin(), a.values().end(), b.values().begin(), 0.0);
}

}  // namespace ardr
