#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "ardr/neighbors.hpp"
#include "ardr/objectives.hpp"
#include "ardr/oracles.hpp"

using namespace ardr;

namespace {

DataMatrix random_matrix(std::size_t n, std::size_t d, std::uint64_t seed, double scale = 1.0) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g(0.0, scale);
    DataMatrix x(n, d);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < d; ++j) x(i, j) = g(rng);
    return x;
}

// Gram-Schmidt on the columns, then scale by sqrt(n) so (1/n) Y^T Y = I.
DataMatrix orthonormalized(DataMatrix y) {
    const std::size_t n = y.rows(), d = y.cols();
    for (std::size_t c = 0; c < d; ++c) {
        for (std::size_t p = 0; p < c; ++p) {
            double dot = 0.0;
            for (std::size_t r = 0; r < n; ++r) dot += y(r, c) * y(r, p);
            for (std::size_t r = 0; r < n; ++r) y(r, c) -= dot * y(r, p);
        }
        double norm = 0.0;
        for (std::size_t r = 0; r < n; ++r) norm += y(r, c) * y(r, c);
        norm = std::sqrt(norm);
        REQUIRE(norm > 1e-12);
        for (std::size_t r = 0; r < n; ++r) y(r, c) /= norm;
    }
    double root_n = std::sqrt(static_cast<double>(n));
    for (double& v : y.values()) v *= root_n;
    return y;
}

double trace_quadratic(const DataMatrix& y, const SymMatrix& m) {
    double total = 0.0;
    for (std::size_t c = 0; c < y.cols(); ++c)
        for (std::size_t i = 0; i < y.rows(); ++i)
            for (std::size_t j = 0; j < y.rows(); ++j)
                total += y(i, c) * m(i, j) * y(j, c);
    return total;
}

double max_abs_col_sum(const DataMatrix& y) {
    double m = 0.0;
    for (std::size_t c = 0; c < y.cols(); ++c) {
        double s = 0.0;
        for (std::size_t r = 0; r < y.rows(); ++r) s += y(r, c);
        m = std::max(m, std::abs(s));
    }
    return m;
}

}  // namespace

TEST_CASE("pca_oracle is lossless on centered d-dimensional data") {
    DataMatrix x = center_rows(random_matrix(12, 2, 5));
    OracleEmbedding o = pca_oracle(x, 2);
    CHECK(o.method == "pca");
    CHECK_FALSE(o.rank_deficient);
    CHECK(procrustes_residual(o.embedding, x) <= 1e-8);
}

TEST_CASE("pca_oracle on collinear 2-D points") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    DataMatrix x(10, 2);
    for (std::size_t i = 0; i < 10; ++i) {
        double t = u(rng);
        x(i, 0) = t;
        x(i, 1) = t;
    }
    OracleEmbedding o = pca_oracle(x, 2);
    CHECK(o.rank_deficient);
    CHECK(std::abs(o.spectrum[1]) <= 1e-8 * o.spectrum[0]);
    for (std::size_t i = 0; i < 10; ++i) CHECK(o.embedding(i, 1) == 0.0);

    // Recover the feature-space direction of the first component: it must be
    // (1,1)/sqrt(2) up to sign.
    DataMatrix xc = center_rows(x);
    double v0 = 0.0, v1 = 0.0;
    for (std::size_t i = 0; i < 10; ++i) {
        v0 += xc(i, 0) * o.embedding(i, 0);
        v1 += xc(i, 1) * o.embedding(i, 0);
    }
    double norm = std::sqrt(v0 * v0 + v1 * v1);
    CHECK(std::abs(std::abs(v0 / norm) - std::sqrt(0.5)) <= 1e-10);
    CHECK(std::abs(std::abs(v1 / norm) - std::sqrt(0.5)) <= 1e-10);
}

TEST_CASE("pca_oracle beats random competitors on the pca objective") {
    DataMatrix x = random_matrix(20, 5, 11);
    SymMatrix gx_c = double_center(gram(x));
    OracleEmbedding o = pca_oracle(x, 2);
    double best = pca_loss(gx_c, o.embedding);
    std::mt19937_64 rng(13);
    std::normal_distribution<double> g;
    for (int trial = 0; trial < 50; ++trial) {
        DataMatrix y(20, 2);
        for (double& v : y.values()) v = g(rng);
        CHECK(best <= pca_loss(gx_c, y));
    }
}

TEST_CASE("pca_oracle reproduces its spectrum and is deterministic") {
    DataMatrix x = random_matrix(15, 4, 17);
    OracleEmbedding o = pca_oracle(x, 3);
    EigenPairs back = sym_eigh(gram(o.embedding), 3, EigenEnd::kLargest);
    for (std::size_t c = 0; c < 3; ++c)
        CHECK(back.values[c] == doctest::Approx(o.spectrum[c]).epsilon(1e-8));

    OracleEmbedding again = pca_oracle(x, 3);
    CHECK(o.embedding == again.embedding);

    CHECK_THROWS_WITH_AS(pca_oracle(x, 5), doctest::Contains("min(n, D)"), std::invalid_argument);
}

TEST_CASE("cmds_oracle on Euclidean distances matches pca_oracle") {
    DataMatrix x = random_matrix(10, 3, 19);
    OracleEmbedding mds = cmds_oracle(dist_matrix(x, Metric::kEuclideanSq), 2);
    OracleEmbedding pca = pca_oracle(x, 2);
    CHECK(mds.method == "cmds");
    CHECK(procrustes_residual(mds.embedding, pca.embedding) <= 1e-8);
}

TEST_CASE("cmds_oracle on the zero matrix returns the zero embedding") {
    SymMatrix zero(5);
    OracleEmbedding o = cmds_oracle(zero, 2);
    CHECK(o.rank_deficient);
    CHECK(o.embedding.frob_norm() == 0.0);
}

TEST_CASE("cmds_oracle matches a dense eigensolve of a hand-built -1/2 CDC") {
    DataMatrix x = DataMatrix::from_rows({{0.0, 0.0}, {1.0, 0.0}, {0.0, 2.0}, {3.0, 1.0}});
    SymMatrix l1 = dist_matrix(x, Metric::kL1);
    const std::size_t n = 4;
    SymMatrix sq(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) sq.set(i, j, l1(i, j) * l1(i, j));

    // Hand-built target: explicit C matrix products, then a direct eigensolve.
    std::vector<std::vector<double>> c(n, std::vector<double>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) c[i][j] = (i == j ? 1.0 : 0.0) - 0.25;
    std::vector<std::vector<double>> cd(n, std::vector<double>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            double s = 0.0;
            for (std::size_t t = 0; t < n; ++t) s += c[i][t] * sq(t, j);
            cd[i][j] = s;
        }
    std::vector<double> full(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            double s = 0.0;
            for (std::size_t t = 0; t < n; ++t) s += cd[i][t] * c[t][j];
            full[i * n + j] = -0.5 * s;
        }
    SymMatrix target = SymMatrix::from_dense(full, n, 1e-9);
    EigenPairs top = sym_eigh(target, 2, EigenEnd::kLargest);
    DataMatrix expect(n, 2);
    for (std::size_t col = 0; col < 2; ++col) {
        double lam = std::max(top.values[col], 0.0);
        double lead = 0.0;
        for (std::size_t r = 0; r < n; ++r)
            if (std::abs(top.vectors(r, col)) > 1e-12) {
                lead = top.vectors(r, col);
                break;
            }
        double flip = lead < 0.0 ? -1.0 : 1.0;
        for (std::size_t r = 0; r < n; ++r)
            expect(r, col) = flip * std::sqrt(lam) * top.vectors(r, col);
    }

    OracleEmbedding o = cmds_oracle(sq, 2);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t col = 0; col < 2; ++col)
            CHECK(o.embedding(r, col) == doctest::Approx(expect(r, col)).epsilon(1e-10));
}

TEST_CASE("cmds_oracle rejects an entirely negative spectrum") {
    // Negative off-diagonal "dissimilarities" make -1/2 CDC negative
    // semidefinite with only the forced null direction at zero.
    const std::size_t n = 5;
    SymMatrix d(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) d.set(i, j, -2.0);
    CHECK_THROWS_WITH_AS(cmds_oracle(d, 2), doctest::Contains("negative"), std::runtime_error);
}

TEST_CASE("cmds_oracle reproduces its positive spectrum") {
    DataMatrix x = random_matrix(9, 3, 23);
    OracleEmbedding o = cmds_oracle(dist_matrix(x, Metric::kEuclideanSq), 3);
    EigenPairs back = sym_eigh(gram(o.embedding), 3, EigenEnd::kLargest);
    for (std::size_t c = 0; c < 3; ++c)
        CHECK(back.values[c] == doctest::Approx(o.spectrum[c]).epsilon(1e-8));
}

TEST_CASE("lle_oracle on the centering projector") {
    const std::size_t n = 6;
    SymMatrix m(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j)
            m.set(i, j, (i == j ? 1.0 : 0.0) - 1.0 / static_cast<double>(n));
    OracleEmbedding o = lle_oracle(m, 2);
    CHECK(o.method == "lle");
    // Degenerate spectrum: any orthonormal basis of the complement of the
    // constant vector; only the objective value is pinned down.
    CHECK(trace_quadratic(o.embedding, m) ==
          doctest::Approx(2.0 * static_cast<double>(n)).epsilon(1e-10));
    CHECK(max_abs_col_sum(o.embedding) <= 1e-8);
    for (std::size_t a = 0; a < 2; ++a)
        for (std::size_t b = 0; b < 2; ++b) {
            double dot = 0.0;
            for (std::size_t r = 0; r < n; ++r) dot += o.embedding(r, a) * o.embedding(r, b);
            CHECK(dot / static_cast<double>(n) ==
                  doctest::Approx(a == b ? 1.0 : 0.0).epsilon(1e-8));
        }
}

TEST_CASE("lle_oracle minimizes the trace objective over random competitors") {
    DataMatrix x = random_matrix(12, 3, 29);
    NeighborGraph g = knn_graph(x, 4, Metric::kEuclideanSq);
    SymMatrix m = m_matrix(lle_weights(x, g, 1e-3));
    OracleEmbedding o = lle_oracle(m, 2);
    double best = trace_quadratic(o.embedding, m);
    std::mt19937_64 rng(31);
    std::normal_distribution<double> gauss;
    for (int trial = 0; trial < 50; ++trial) {
        DataMatrix y(12, 2);
        for (double& v : y.values()) v = gauss(rng);
        CHECK(best <= trace_quadratic(orthonormalized(y), m) + 1e-12);
    }

    // Constraint and centering invariants.
    for (std::size_t a = 0; a < 2; ++a)
        for (std::size_t b = 0; b < 2; ++b) {
            double dot = 0.0;
            for (std::size_t r = 0; r < 12; ++r) dot += o.embedding(r, a) * o.embedding(r, b);
            CHECK(dot / 12.0 == doctest::Approx(a == b ? 1.0 : 0.0).epsilon(1e-8));
        }
    CHECK(max_abs_col_sum(o.embedding) <= 1e-8);

    OracleEmbedding again = lle_oracle(m, 2);
    CHECK(o.embedding == again.embedding);
}

TEST_CASE("lle_oracle errors when the usable spectrum is too small") {
    const std::size_t n = 4;
    // Rank-one psd matrix with its range orthogonal to the constant vector.
    std::vector<double> z{1.0, -1.0, 2.0, -2.0};
    SymMatrix m(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) m.set(i, j, z[i] * z[j]);
    CHECK_NOTHROW(lle_oracle(m, 1));
    CHECK_THROWS_WITH_AS(lle_oracle(m, 2), doctest::Contains("null threshold"),
                         std::runtime_error);

    SymMatrix zero(3);
    CHECK_THROWS_WITH_AS(lle_oracle(zero, 1), doctest::Contains("null threshold"),
                         std::runtime_error);
}

TEST_CASE("finite_diff_grad on quadratic and constant losses") {
    DataMatrix y = random_matrix(6, 2, 37);
    DataMatrix g = finite_diff_grad(
        [](const DataMatrix& p) {
            double s = p.frob_norm();
            return s * s;
        },
        y, 1e-5);
    for (std::size_t i = 0; i < y.values().size(); ++i)
        CHECK(std::abs(g.values()[i] - 2.0 * y.values()[i]) <= 1e-6);

    DataMatrix gc = finite_diff_grad([](const DataMatrix&) { return 3.5; }, y, 1e-5);
    CHECK(gc.frob_norm() == 0.0);
}

TEST_CASE("finite_diff_grad cross-checks pca_gradient") {
    DataMatrix x = random_matrix(10, 3, 41);
    SymMatrix gx_c = double_center(gram(x));
    DataMatrix y = random_matrix(10, 2, 42);
    DataMatrix analytic = pca_gradient(gx_c, y);
    DataMatrix fd = finite_diff_grad(
        [&](const DataMatrix& p) { return pca_loss(gx_c, p); }, y, 1e-5);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < analytic.values().size(); ++i) {
        double d = analytic.values()[i] - fd.values()[i];
        num += d * d;
        den += fd.values()[i] * fd.values()[i];
    }
    CHECK(std::sqrt(num / den) <= 1e-5);
}

TEST_CASE("finite_diff_grad rejects bad steps and non-finite losses") {
    DataMatrix y = random_matrix(3, 2, 43);
    CHECK_THROWS_WITH_AS(
        finite_diff_grad([](const DataMatrix&) { return 0.0; }, y, 0.0),
        doctest::Contains("positive"), std::invalid_argument);
    CHECK_THROWS_WITH_AS(
        finite_diff_grad(
            [](const DataMatrix&) { return std::numeric_limits<double>::quiet_NaN(); }, y,
            1e-5),
        doctest::Contains("non-finite"), std::runtime_error);
}
