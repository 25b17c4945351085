#include "ardr/oracles.hpp"

#include <algorithm>
#include <cmath>

namespace ardr {

namespace {

// Flip each eigenvector so its first entry with magnitude above 1e-12 is
// positive; repeated runs on identical inputs then agree bit-for-bit.
void fix_signs(DataMatrix& vecs) {
    for (std::size_t c = 0; c < vecs.cols(); ++c) {
        double lead = 0.0;
        for (std::size_t r = 0; r < vecs.rows(); ++r) {
            if (std::fabs(vecs(r, c)) > 1e-12) {
                lead = vecs(r, c);
                break;
            }
        }
        if (lead < 0.0) {
            for (std::size_t r = 0; r < vecs.rows(); ++r) vecs(r, c) = -vecs(r, c);
        }
    }
}

}  // namespace

OracleEmbedding pca_oracle(const DataMatrix& x, std::size_t d) {
    detail::require(d >= 1 && d <= std::min(x.rows(), x.cols()),
                    "pca_oracle: require 1 <= d <= min(n, D)");
    const std::size_t n = x.rows();
    EigenPairs top = sym_eigh(double_center(gram(x)), d, EigenEnd::kLargest);
    fix_signs(top.vectors);
    OracleEmbedding out;
    out.embedding = DataMatrix(n, d);
    out.spectrum = top.values;
    out.method = "pca";
    const double thresh = 1e-10 * std::max(top.values.front(), 0.0);
    for (std::size_t c = 0; c < d; ++c) {
        if (top.values[c] <= thresh) {
            out.rank_deficient = true;
            continue;
        }
        const double s = std::sqrt(top.values[c]);
        for (std::size_t r = 0; r < n; ++r) out.embedding(r, c) = s * top.vectors(r, c);
    }
    return out;
}

OracleEmbedding cmds_oracle(const SymMatrix& sq_dissim, std::size_t d) {
    const std::size_t n = sq_dissim.size();
    detail::require(d >= 1 && d <= n, "cmds_oracle: require 1 <= d <= n");
    detail::require(sq_dissim.all_finite(), "cmds_oracle: non-finite dissimilarities");
    const SymMatrix centered = double_center(sq_dissim);
    SymMatrix target(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) target.set(i, j, -0.5 * centered(i, j));
    EigenPairs top = sym_eigh(target, n, EigenEnd::kLargest);
    fix_signs(top.vectors);
    // -1/2 C D C always carries the constant vector in its null space, so "no
    // positive scatter direction at all" is the degenerate case to reject.
    const double null_tol = 1e-12 * target.frob_norm();
    if (top.values.front() <= null_tol && top.values.back() < -null_tol)
        detail::fail("cmds_oracle: spectrum of -1/2 C D C is entirely negative");
    OracleEmbedding out;
    out.embedding = DataMatrix(n, d);
    out.spectrum.assign(top.values.begin(), top.values.begin() + static_cast<std::ptrdiff_t>(d));
    out.method = "cmds";
    for (std::size_t c = 0; c < d; ++c) {
        const double lam = std::max(top.values[c], 0.0);
        if (lam == 0.0) {
            out.rank_deficient = true;
            continue;
        }
        const double s = std::sqrt(lam);
        for (std::size_t r = 0; r < n; ++r) out.embedding(r, c) = s * top.vectors(r, c);
    }
    return out;
}

OracleEmbedding lle_oracle(const SymMatrix& m, std::size_t d) {
    const std::size_t n = m.size();
    detail::require(d >= 1 && d <= n, "lle_oracle: require 1 <= d <= n");
    EigenPairs all = sym_eigh(m, n, EigenEnd::kSmallest);
    const double null_thresh = 1e-8 * m.frob_norm();
    OracleEmbedding out;
    out.embedding = DataMatrix(n, d);
    out.method = "lle";
    std::size_t c = 0;
    for (std::size_t k = 0; k < n && c < d; ++k) {
        if (all.values[k] <= null_thresh) continue;
        out.spectrum.push_back(all.values[k]);
        for (std::size_t r = 0; r < n; ++r) out.embedding(r, c) = all.vectors(r, k);
        ++c;
    }
    if (c < d)
        detail::fail(detail::str_printf(
            "lle_oracle: only %zu eigenvalues above the null threshold, need %zu", c, d));
    // The eigensolver leaves the small-eigenvalue vectors mixed with the
    // near-null constant direction at its own convergence tolerance, which is
    // coarser than the centering contract here. Deflate the constant vector
    // and re-orthonormalize explicitly.
    for (std::size_t col = 0; col < d; ++col) {
        double mean = 0.0;
        for (std::size_t r = 0; r < n; ++r) mean += out.embedding(r, col);
        mean /= static_cast<double>(n);
        for (std::size_t r = 0; r < n; ++r) out.embedding(r, col) -= mean;
        for (std::size_t prev = 0; prev < col; ++prev) {
            double dot = 0.0;
            for (std::size_t r = 0; r < n; ++r)
                dot += out.embedding(r, col) * out.embedding(r, prev);
            dot /= static_cast<double>(n);  // previous columns have squared norm n
            for (std::size_t r = 0; r < n; ++r)
                out.embedding(r, col) -= dot * out.embedding(r, prev);
        }
        double norm = 0.0;
        for (std::size_t r = 0; r < n; ++r)
            norm += out.embedding(r, col) * out.embedding(r, col);
        norm = std::sqrt(norm);
        detail::require(norm > 1e-12, "lle_oracle: degenerate eigenvector after deflation");
        const double s = std::sqrt(static_cast<double>(n)) / norm;
        for (std::size_t r = 0; r < n; ++r) out.embedding(r, col) *= s;
    }
    fix_signs(out.embedding);
    return out;
}

DataMatrix finite_diff_grad(const std::function<double(const DataMatrix&)>& loss,
                            const DataMatrix& y, double h) {
    detail::require(h > 0.0, "finite_diff_grad: h must be positive");
    DataMatrix probe = y;
    DataMatrix g(y.rows(), y.cols());
    for (std::size_t i = 0; i < y.rows(); ++i) {
        for (std::size_t j = 0; j < y.cols(); ++j) {
            const double orig = probe(i, j);
            probe(i, j) = orig + h;
            const double up = loss(probe);
            probe(i, j) = orig - h;
            const double down = loss(probe);
            probe(i, j) = orig;
            if (!std::isfinite(up) || !std::isfinite(down))
                detail::fail(detail::str_printf(
                    "finite_diff_grad: non-finite loss at probe for coordinate (%zu, %zu)", i,
                    j));
            g(i, j) = (up - down) / (2.0 * h);
        }
    }
    return g;
}

}  // namespace ardr
