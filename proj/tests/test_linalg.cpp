#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "ardr/matrix.hpp"

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

SymMatrix random_sym(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g;
    SymMatrix s(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) s.set(i, j, g(rng));
    return s;
}

// Oracle: apply C = I - J/n from both sides by explicit triple-loop products.
SymMatrix explicit_cac(const SymMatrix& a) {
    const std::size_t n = a.size();
    DataMatrix c(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            c(i, j) = (i == j ? 1.0 : 0.0) - 1.0 / static_cast<double>(n);
    DataMatrix ca(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            double s = 0.0;
            for (std::size_t t = 0; t < n; ++t) s += c(i, t) * a(t, j);
            ca(i, j) = s;
        }
    SymMatrix out(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            double s = 0.0;
            for (std::size_t t = 0; t < n; ++t) s += ca(i, t) * c(t, j);
            out.set(i, j, s);
        }
    return out;
}

double max_abs_diff(const SymMatrix& a, const SymMatrix& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j) m = std::max(m, std::abs(a(i, j) - b(i, j)));
    return m;
}

}  // namespace

TEST_CASE("center_rows basics") {
    auto x = DataMatrix::from_rows({{0.0}, {2.0}});
    auto c = center_rows(x);
    CHECK(c(0, 0) == doctest::Approx(-1.0).epsilon(1e-15));
    CHECK(c(1, 0) == doctest::Approx(1.0).epsilon(1e-15));

    auto single = DataMatrix::from_rows({{3.0, -4.0, 5.0}});
    auto cs = center_rows(single);
    for (std::size_t j = 0; j < 3; ++j) CHECK(cs(0, j) == 0.0);

    auto centered = DataMatrix::from_rows({{-1.0, 2.0}, {1.0, -2.0}});
    auto cc = center_rows(centered);
    CHECK(cc == centered);
}

TEST_CASE("center_rows column means vanish and centering is idempotent") {
    for (std::uint64_t seed : {1, 2, 3}) {
        auto x = random_matrix(40, 7, seed, 3.0);
        auto c = center_rows(x);
        for (std::size_t j = 0; j < c.cols(); ++j) {
            double mean = 0.0;
            for (std::size_t i = 0; i < c.rows(); ++i) mean += c(i, j);
            CHECK(std::abs(mean / static_cast<double>(c.rows())) <= 1e-12);
        }
        auto c2 = center_rows(c);
        for (std::size_t i = 0; i < c.rows(); ++i)
            for (std::size_t j = 0; j < c.cols(); ++j)
                CHECK(std::abs(c2(i, j) - c(i, j)) <= 1e-12);
    }
}

TEST_CASE("gram basics and triple-loop oracle") {
    auto id = gram(DataMatrix::from_rows({{1.0, 0.0}, {0.0, 1.0}}));
    CHECK(id(0, 0) == 1.0);
    CHECK(id(0, 1) == 0.0);
    CHECK(id(1, 1) == 1.0);

    auto z = gram(DataMatrix(3, 2, 0.0));
    CHECK(z.frob_norm() == 0.0);

    auto g = gram(DataMatrix::from_rows({{1.0, 0.0}, {0.0, 1.0}, {1.0, 1.0}}));
    auto expect = SymMatrix::from_rows({{1, 0, 1}, {0, 1, 1}, {1, 1, 2}});
    CHECK(max_abs_diff(g, expect) == 0.0);

    auto x = random_matrix(12, 5, 99);
    auto gx = gram(x);
    for (std::size_t i = 0; i < 12; ++i)
        for (std::size_t j = 0; j < 12; ++j) {
            double s = 0.0;
            for (std::size_t t = 0; t < 5; ++t) s += x(i, t) * x(j, t);
            CHECK(std::abs(gx(i, j) - s) <= 1e-14);
        }
}

TEST_CASE("dist_matrix basics") {
    auto same = dist_matrix(DataMatrix::from_rows({{1.0, 2.0}, {1.0, 2.0}}), Metric::kEuclideanSq);
    CHECK(same.frob_norm() == 0.0);

    auto e = dist_matrix(DataMatrix::from_rows({{0.0}, {3.0}}), Metric::kEuclideanSq);
    CHECK(e(0, 1) == 9.0);
    CHECK(e(0, 0) == 0.0);

    auto l1 = dist_matrix(DataMatrix::from_rows({{0.0, 0.0}, {1.0, 2.0}}), Metric::kL1);
    CHECK(l1(0, 1) == 3.0);
}

TEST_CASE("double_center matches explicit C*A*C and kills constants") {
    auto ones = SymMatrix(4, 1.0);
    CHECK(double_center(ones).frob_norm() <= 1e-12);

    for (std::uint64_t seed : {5, 6, 7}) {
        auto a = random_sym(9, seed);
        auto fast = double_center(a);
        auto oracle = explicit_cac(a);
        CHECK(max_abs_diff(fast, oracle) <= 1e-12);
        auto twice = double_center(fast);
        CHECK(max_abs_diff(twice, fast) <= 1e-12);
        for (std::size_t i = 0; i < fast.size(); ++i) {
            double rs = 0.0;
            for (std::size_t j = 0; j < fast.size(); ++j) rs += fast(i, j);
            CHECK(std::abs(rs) <= 1e-10);
        }
    }
}

TEST_CASE("double_center(gram) equals gram of centered rows") {
    auto x = random_matrix(20, 4, 11, 2.0);
    auto a = double_center(gram(x));
    auto b = gram(center_rows(x));
    CHECK(max_abs_diff(a, b) <= 1e-10);
}

TEST_CASE("Euclidean identity C D C = -2 C G C") {
    for (std::uint64_t seed : {21, 22, 23, 24}) {
        auto x = random_matrix(30, 6, seed, 1.5);
        auto cdc = double_center(dist_matrix(x, Metric::kEuclideanSq));
        auto cgc = double_center(gram(x));
        double worst = 0.0;
        for (std::size_t i = 0; i < 30; ++i)
            for (std::size_t j = 0; j < 30; ++j)
                worst = std::max(worst, std::abs(cdc(i, j) + 2.0 * cgc(i, j)));
        CHECK(worst <= 1e-8);
    }
}

TEST_CASE("sym_eigh on tiny fixed matrices") {
    auto d = sym_eigh(SymMatrix::from_rows({{3, 0}, {0, 1}}), 1, EigenEnd::kLargest);
    CHECK(d.values[0] == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(std::abs(d.vectors(0, 0)) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(d.vectors(1, 0)) <= 1e-12);

    auto ones = sym_eigh(SymMatrix(2, 1.0), 2, EigenEnd::kLargest);
    CHECK(ones.values[0] == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(ones.values[1] == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("sym_eigh reconstruction, orthonormality, sortedness") {
    for (std::uint64_t seed : {31, 32, 33}) {
        auto a = random_sym(6, seed);
        auto eig = sym_eigh(a, 6, EigenEnd::kLargest);
        for (std::size_t c = 0; c + 1 < 6; ++c) CHECK(eig.values[c] >= eig.values[c + 1]);
        for (std::size_t c1 = 0; c1 < 6; ++c1)
            for (std::size_t c2 = 0; c2 < 6; ++c2) {
                double dot = 0.0;
                for (std::size_t i = 0; i < 6; ++i) dot += eig.vectors(i, c1) * eig.vectors(i, c2);
                CHECK(std::abs(dot - (c1 == c2 ? 1.0 : 0.0)) <= 1e-8);
            }
        double worst = 0.0;
        for (std::size_t i = 0; i < 6; ++i)
            for (std::size_t j = 0; j < 6; ++j) {
                double recon = 0.0;
                for (std::size_t c = 0; c < 6; ++c)
                    recon += eig.values[c] * eig.vectors(i, c) * eig.vectors(j, c);
                worst = std::max(worst, std::abs(recon - a(i, j)));
            }
        CHECK(worst <= 1e-8 * a.frob_norm());

        auto small = sym_eigh(a, 2, EigenEnd::kSmallest);
        CHECK(small.values[0] <= small.values[1]);
        CHECK(small.values[0] == doctest::Approx(eig.values[5]).epsilon(1e-10));
    }
}

TEST_CASE("sym_eigh eigenvalue residual bound") {
    auto a = random_sym(25, 77);
    auto eig = sym_eigh(a, 25, EigenEnd::kSmallest);
    for (std::size_t c = 0; c < 25; ++c) {
        double resid = 0.0;
        for (std::size_t i = 0; i < 25; ++i) {
            double av = 0.0;
            for (std::size_t j = 0; j < 25; ++j) av += a(i, j) * eig.vectors(j, c);
            double r = av - eig.values[c] * eig.vectors(i, c);
            resid += r * r;
        }
        CHECK(std::sqrt(resid) <= 1e-6 * a.frob_norm());
    }
}

TEST_CASE("procrustes residual") {
    auto yref = center_rows(random_matrix(15, 2, 41));
    CHECK(procrustes_residual(yref, yref) <= 1e-14);

    // 90 degree rotation.
    DataMatrix rot(15, 2);
    for (std::size_t i = 0; i < 15; ++i) {
        rot(i, 0) = -yref(i, 1);
        rot(i, 1) = yref(i, 0);
    }
    CHECK(procrustes_residual(rot, yref) <= 1e-10);

    // Uniform scaling by 2: best orthogonal fit leaves relative residual 1.
    auto three = center_rows(DataMatrix::from_rows({{1.0, 0.0}, {0.0, 2.0}, {-1.0, -1.0}}));
    DataMatrix doubled(3, 2);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 2; ++j) doubled(i, j) = 2.0 * three(i, j);
    CHECK(procrustes_residual(doubled, three) == doctest::Approx(1.0).epsilon(1e-10));

    CHECK_THROWS(procrustes_residual(DataMatrix(3, 2), DataMatrix(4, 2)));
}

TEST_CASE("frob_inner") {
    auto a = random_sym(5, 55);
    CHECK(frob_inner(a, a) == doctest::Approx(a.frob_norm() * a.frob_norm()).epsilon(1e-12));
    CHECK(frob_inner(SymMatrix::identity(2), SymMatrix::from_rows({{0, 1}, {1, 0}})) == 0.0);
    CHECK(frob_inner(SymMatrix::from_rows({{1, 2}, {2, 1}}),
                     SymMatrix::from_rows({{3, 0}, {0, 3}})) == 6.0);
    CHECK_THROWS(frob_inner(SymMatrix(2), SymMatrix(3)));
}

TEST_CASE("SymMatrix construction enforces symmetry") {
    std::vector<double> bad = {1.0, 2.0, 2.5, 1.0};
    CHECK_THROWS(SymMatrix::from_dense(bad, 2));
    std::vector<double> good = {1.0, 2.0, 2.0, 1.0};
    CHECK_NOTHROW(SymMatrix::from_dense(good, 2));
}
