#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "ardr/matrix.hpp"

namespace ardr {

struct Eq8Entry {
    std::size_t l = 0, m = 0;
    double ratio = 0.0;
};

// Bundle of comparison metrics for one embedding. knn_accuracy is NaN when no
// labels were supplied.
struct MetricReport {
    double knn_accuracy;
    std::map<std::size_t, double> preservation_by_k;  // k -> B(X,Y;k)
    std::vector<Eq8Entry> eq8_ratios;
    std::string notes;

    MetricReport();
};

// Leave-one-out k-nearest-neighbor majority-vote accuracy of `labels` in the
// embedding y (Euclidean, ties toward the lower index; vote ties toward the
// smallest label value).
double knn_accuracy(const DataMatrix& y, const std::vector<int>& labels, std::size_t k);

// B(X,Y;k) for k = 1..kmax: the fraction of points whose rank-k Euclidean
// neighbor is the same point in X and in Y.
std::vector<double> neighborhood_b_profile(const DataMatrix& x, const DataMatrix& y,
                                           std::size_t kmax);
double neighborhood_b(const DataMatrix& x, const DataMatrix& y, std::size_t k);

// Mean preservation of ranks l..m relative to rank-1 preservation:
// [1/(m-l) sum_{k=l..m} B(X,Y;k)] / B(X,Y;1). The divisor m-l undercounts the
// m-l+1 terms; inclusive_divisor switches to the term count.
double eq8_ratio(const DataMatrix& x, const DataMatrix& y, std::size_t l, std::size_t m,
                 bool inclusive_divisor = false);

// Set-overlap variant: mean |top-k(X) intersect top-k(Y)| / k.
double topk_overlap(const DataMatrix& x, const DataMatrix& y, std::size_t k);

// Affine rescale of the losses mapping max -> 1 and min -> 0; a constant
// curve maps to all zeros.
std::vector<std::pair<std::size_t, double>> normalize_loss_curve(
    const std::vector<std::pair<std::size_t, double>>& curve);

}  // namespace ardr
