#include "ardr/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ardr/neighbors.hpp"

namespace ardr {

using detail::require;

MetricReport::MetricReport() : knn_accuracy(std::numeric_limits<double>::quiet_NaN()) {}

double knn_accuracy(const DataMatrix& y, const std::vector<int>& labels, std::size_t k) {
    const std::size_t n = y.rows();
    require(labels.size() == n, "knn_accuracy: labels/embedding size mismatch");
    require(k >= 1 && k < n, "knn_accuracy: k must satisfy 1 <= k < n");

    NeighborGraph g = knn_graph(y, k, Metric::kEuclideanSq);
    std::size_t correct = 0;
    std::vector<std::pair<int, std::size_t>> votes;  // (label, count)
    for (std::size_t i = 0; i < n; ++i) {
        votes.clear();
        for (std::size_t t = 0; t < k; ++t) {
            int lab = labels[g.idx(i, t)];
            bool seen = false;
            for (auto& [value, count] : votes)
                if (value == lab) {
                    ++count;
                    seen = true;
                    break;
                }
            if (!seen) votes.push_back({lab, 1});
        }
        int best = votes.front().first;
        std::size_t best_count = votes.front().second;
        for (auto [value, count] : votes)
            if (count > best_count || (count == best_count && value < best)) {
                best = value;
                best_count = count;
            }
        if (best == labels[i]) ++correct;
    }
    return static_cast<double>(correct) / static_cast<double>(n);
}

std::vector<double> neighborhood_b_profile(const DataMatrix& x, const DataMatrix& y,
                                           std::size_t kmax) {
    const std::size_t n = x.rows();
    require(y.rows() == n, "neighborhood_b: X/Y row count mismatch");
    require(kmax >= 1 && kmax < n, "neighborhood_b: k must satisfy 1 <= k < n");

    NeighborGraph gx = knn_graph(x, kmax, Metric::kEuclideanSq);
    NeighborGraph gy = knn_graph(y, kmax, Metric::kEuclideanSq);
    std::vector<double> profile(kmax, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t t = 0; t < kmax; ++t)
            if (gx.idx(i, t) == gy.idx(i, t)) profile[t] += 1.0;
    for (double& b : profile) b /= static_cast<double>(n);
    return profile;
}

double neighborhood_b(const DataMatrix& x, const DataMatrix& y, std::size_t k) {
    return neighborhood_b_profile(x, y, k).back();
}

double eq8_ratio(const DataMatrix& x, const DataMatrix& y, std::size_t l, std::size_t m,
                 bool inclusive_divisor) {
    const std::size_t n = x.rows();
    require(l >= 1 && l < m && m < n, "eq8_ratio: need 1 <= l < m < n");

    std::vector<double> profile = neighborhood_b_profile(x, y, m);
    if (profile.front() == 0.0)
        detail::fail("eq8_ratio: rank-1 preservation B(X,Y;1) is zero, ratio undefined");
    double sum = 0.0;
    for (std::size_t k = l; k <= m; ++k) sum += profile[k - 1];
    double divisor = static_cast<double>(inclusive_divisor ? m - l + 1 : m - l);
    return sum / divisor / profile.front();
}

double topk_overlap(const DataMatrix& x, const DataMatrix& y, std::size_t k) {
    const std::size_t n = x.rows();
    require(y.rows() == n, "topk_overlap: X/Y row count mismatch");
    require(k >= 1 && k < n, "topk_overlap: k must satisfy 1 <= k < n");

    NeighborGraph gx = knn_graph(x, k, Metric::kEuclideanSq);
    NeighborGraph gy = knn_graph(y, k, Metric::kEuclideanSq);
    std::vector<std::uint32_t> a(k), b(k);
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t t = 0; t < k; ++t) {
            a[t] = gx.idx(i, t);
            b[t] = gy.idx(i, t);
        }
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        std::size_t shared = 0, ia = 0, ib = 0;
        while (ia < k && ib < k) {
            if (a[ia] == b[ib]) ++shared, ++ia, ++ib;
            else if (a[ia] < b[ib]) ++ia;
            else ++ib;
        }
        total += static_cast<double>(shared) / static_cast<double>(k);
    }
    return total / static_cast<double>(n);
}

std::vector<std::pair<std::size_t, double>> normalize_loss_curve(
    const std::vector<std::pair<std::size_t, double>>& curve) {
    require(!curve.empty(), "normalize_loss_curve: empty curve");
    double lo = curve.front().second, hi = curve.front().second;
    for (const auto& [epoch, loss] : curve) {
        lo = std::min(lo, loss);
        hi = std::max(hi, loss);
    }
    std::vector<std::pair<std::size_t, double>> out;
    out.reserve(curve.size());
    const double span = hi - lo;
    for (const auto& [epoch, loss] : curve)
        out.emplace_back(epoch, span > 0.0 ? (loss - lo) / span : 0.0);
    return out;
}

}  // namespace ardr
