#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "ardr/kernels.hpp"
#include "ardr/matrix.hpp"
#include "ardr/neighbors.hpp"

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

// Independent minimum-eigenvalue oracle: power iteration on c*I - K where c
// bounds the spectral radius by the l1 norm.
double min_eig_power_oracle(const SymMatrix& k, std::uint64_t seed) {
    const std::size_t n = k.size();
    double c = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double rs = 0.0;
        for (std::size_t j = 0; j < n; ++j) rs += std::abs(k(i, j));
        c = std::max(c, rs);
    }
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g;
    std::vector<double> v(n), av(n);
    for (double& x : v) x = g(rng);
    for (int it = 0; it < 2000; ++it) {
        for (std::size_t i = 0; i < n; ++i) {
            double s = c * v[i];
            for (std::size_t j = 0; j < n; ++j) s -= k(i, j) * v[j];
            av[i] = s;
        }
        double norm = 0.0;
        for (double x : av) norm += x * x;
        norm = std::sqrt(norm);
        for (std::size_t i = 0; i < n; ++i) v[i] = av[i] / norm;
    }
    double rayleigh = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < n; ++j) s += k(i, j) * v[j];
        rayleigh += v[i] * s;
    }
    return rayleigh;
}

}  // namespace

TEST_CASE("output kernel values and derivative") {
    OutputKernel cauchy{OutputKernelKind::kCauchy};
    CHECK(output_kernel(cauchy, 0.0) == 1.0);
    CHECK(output_kernel(cauchy, 1.0) == 0.5);
    CHECK(output_kernel(cauchy, 3.0) == 0.25);
    CHECK(output_kernel_deriv(cauchy, 0.0) == -1.0);
    CHECK(output_kernel_deriv(cauchy, 1.0) == -0.25);

    for (double u : {0.1, 2.0, 10.0}) {
        const double h = 1e-6;
        double fd = (output_kernel(cauchy, u + h) - output_kernel(cauchy, u - h)) / (2.0 * h);
        double an = output_kernel_deriv(cauchy, u);
        CHECK(std::abs(fd - an) / std::abs(an) <= 1e-6);
    }
    for (double u = 0.0; u < 50.0; u += 0.7) CHECK(output_kernel_deriv(cauchy, u) < 0.0);

    OutputKernel linear{OutputKernelKind::kLinear};
    CHECK_THROWS(output_kernel(linear, 1.0));
    CHECK_THROWS(output_kernel_deriv(linear, 1.0));
}

TEST_CASE("rbf_fixed entries and fuzzy union formula") {
    auto x = DataMatrix::from_rows({{0.0, 0.0}, {0.0, 0.0}, {3.0, 4.0}});
    auto g = knn_graph(x, 2, Metric::kEuclideanSq);
    auto k = input_kernel_matrix(x, g, {InputKernelKind::kRbfFixed, 2.0, Symmetrize::kNone});
    CHECK(k(0, 1) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(k(0, 0) == 1.0);
    CHECK(k(0, 2) == doctest::Approx(std::exp(-25.0 / 8.0)).epsilon(1e-12));

    auto fu = input_kernel_matrix(x, g, {InputKernelKind::kRbfFixed, 2.0, Symmetrize::kFuzzyUnion});
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) {
            double a = k(i, j);
            CHECK(fu(i, j) == doctest::Approx(2.0 * a - a * a).epsilon(1e-12));
        }
}

TEST_CASE("rbf_local calibration hits the log2(k) target per row") {
    const std::size_t n = 60, k = 12;
    auto x = random_matrix(n, 4, 9, 2.0);
    auto g = knn_graph(x, k, Metric::kEuclideanSq);
    auto sc = smooth_knn_scales(g);
    for (std::size_t i = 0; i < n; ++i) {
        double s = 0.0;
        for (std::size_t t = 0; t < k; ++t)
            s += std::exp(-std::max(0.0, std::sqrt(g.dist(i, t)) - sc.rho[i]) / sc.sigma[i]);
        if (!sc.clamped[i]) CHECK(std::abs(s - std::log2(static_cast<double>(k))) <= 1e-3);
        CHECK(sc.rho[i] == doctest::Approx(std::sqrt(g.dist(i, 0))).epsilon(1e-12));
        CHECK(sc.sigma[i] > 0.0);
    }
}

TEST_CASE("rbf_local kernel entries live in [0,1] and support the kNN graph") {
    const std::size_t n = 40, k = 6;
    auto x = random_matrix(n, 3, 13);
    auto g = knn_graph(x, k, Metric::kEuclideanSq);
    for (auto sym : {Symmetrize::kFuzzyUnion, Symmetrize::kAverage}) {
        auto kx = input_kernel_matrix(x, g, {InputKernelKind::kRbfLocal, 1.0, sym});
        std::size_t nonzero = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                CHECK(kx(i, j) >= 0.0);
                CHECK(kx(i, j) <= 1.0);
                if (kx(i, j) > 0.0) ++nonzero;
            }
        CHECK(nonzero >= n * k);       // every directed edge survives the union
        CHECK(nonzero <= 2 * n * k);   // and no support appears outside it
        for (std::size_t i = 0; i < n; ++i) CHECK(kx(i, i) == 0.0);
    }
    CHECK_THROWS(input_kernel_matrix(x, g, {InputKernelKind::kRbfLocal, 1.0, Symmetrize::kNone}));
}

TEST_CASE("rbf_local rejects all-identical points") {
    DataMatrix x(5, 2, 1.0);
    auto g = knn_graph(x, 2, Metric::kEuclideanSq);
    CHECK_THROWS_WITH_AS(
        input_kernel_matrix(x, g, {InputKernelKind::kRbfLocal, 1.0, Symmetrize::kFuzzyUnion}),
        doctest::Contains("identical"), std::runtime_error);
}

TEST_CASE("linear input kernel is the Gram matrix") {
    auto x = random_matrix(10, 3, 21);
    auto g = knn_graph(x, 3, Metric::kEuclideanSq);
    auto k = input_kernel_matrix(x, g, {InputKernelKind::kLinear, 1.0, Symmetrize::kNone});
    auto gm = gram(x);
    for (std::size_t i = 0; i < 10; ++i)
        for (std::size_t j = 0; j < 10; ++j)
            CHECK(k(i, j) == doctest::Approx(gm(i, j)).epsilon(1e-14));
}

TEST_CASE("psd_diagnostic") {
    CHECK(psd_diagnostic(SymMatrix::identity(4)) == doctest::Approx(0.5).epsilon(1e-12));

    auto x = random_matrix(20, 4, 31);
    CHECK(psd_diagnostic(gram(x)) >= -1e-10);

    auto g = knn_graph(x, 5, Metric::kEuclideanSq);
    auto kx = input_kernel_matrix(
        random_matrix(30, 4, 32), knn_graph(random_matrix(30, 4, 32), 5, Metric::kEuclideanSq),
        {InputKernelKind::kRbfLocal, 1.0, Symmetrize::kFuzzyUnion});
    double diag = psd_diagnostic(kx);
    double oracle = min_eig_power_oracle(kx, 7) / kx.frob_norm();
    CHECK(diag == doctest::Approx(oracle).epsilon(1e-5));
}
