#include "ardr/neighbors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

namespace ardr {

using detail::require;
using detail::str_printf;

NeighborGraph knn_graph(const DataMatrix& x, std::size_t k, Metric metric) {
    const std::size_t n = x.rows();
    require(n >= 2, "knn_graph: need at least two points");
    require(k >= 1 && k < n, "knn_graph: k must satisfy 1 <= k < n");
    require(x.all_finite(), "knn_graph: non-finite input");

    NeighborGraph g;
    g.n = n;
    g.k = k;
    g.metric = metric;
    g.indices.resize(n * k);
    g.dists.resize(n * k);

    const std::size_t d = x.cols();
    std::vector<std::pair<double, std::uint32_t>> cand(n - 1);
    for (std::size_t i = 0; i < n; ++i) {
        const double* xi = x.row(i);
        std::size_t c = 0;
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
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
            cand[c++] = {s, static_cast<std::uint32_t>(j)};
        }
        // Lexicographic order on (distance, index) realizes the tie-break.
        std::partial_sort(cand.begin(), cand.begin() + static_cast<std::ptrdiff_t>(k),
                          cand.end());
        for (std::size_t t = 0; t < k; ++t) {
            g.indices[i * k + t] = cand[t].second;
            g.dists[i * k + t] = cand[t].first;
        }
    }
    return g;
}

EdgeList sym_edge_list(const NeighborGraph& g) {
    std::vector<std::vector<std::pair<std::uint32_t, double>>> adj(g.n);
    for (std::size_t i = 0; i < g.n; ++i)
        for (std::size_t t = 0; t < g.k; ++t) {
            std::uint32_t j = g.idx(i, t);
            double len = g.metric == Metric::kEuclideanSq ? std::sqrt(g.dist(i, t))
                                                          : g.dist(i, t);
            std::uint32_t a = std::min<std::uint32_t>(static_cast<std::uint32_t>(i), j);
            std::uint32_t b = std::max<std::uint32_t>(static_cast<std::uint32_t>(i), j);
            adj[a].push_back({b, len});
        }
    EdgeList edges;
    for (std::size_t a = 0; a < g.n; ++a) {
        std::sort(adj[a].begin(), adj[a].end());
        std::uint32_t last = std::numeric_limits<std::uint32_t>::max();
        for (auto [b, len] : adj[a]) {
            if (b == last) continue;  // i->j and j->i carry the same length
            last = b;
            edges.heads.push_back(static_cast<std::uint32_t>(a));
            edges.tails.push_back(b);
            edges.lengths.push_back(len);
        }
    }
    return edges;
}

namespace {

std::vector<std::uint32_t> components_from_adjacency(
    const std::vector<std::vector<std::pair<std::uint32_t, double>>>& adj) {
    const std::size_t n = adj.size();
    std::vector<std::uint32_t> comp(n, std::numeric_limits<std::uint32_t>::max());
    std::uint32_t next = 0;
    std::vector<std::uint32_t> stack;
    for (std::size_t s = 0; s < n; ++s) {
        if (comp[s] != std::numeric_limits<std::uint32_t>::max()) continue;
        comp[s] = next;
        stack.push_back(static_cast<std::uint32_t>(s));
        while (!stack.empty()) {
            std::uint32_t u = stack.back();
            stack.pop_back();
            for (auto [v, w] : adj[u]) {
                (void)w;
                if (comp[v] == std::numeric_limits<std::uint32_t>::max()) {
                    comp[v] = next;
                    stack.push_back(v);
                }
            }
        }
        ++next;
    }
    return comp;
}

}  // namespace

GeodesicDistances geodesic_dists(const NeighborGraph& g) {
    const std::size_t n = g.n;
    EdgeList edges = sym_edge_list(g);
    std::vector<std::vector<std::pair<std::uint32_t, double>>> adj(n);
    for (std::size_t e = 0; e < edges.size(); ++e) {
        adj[edges.heads[e]].push_back({edges.tails[e], edges.lengths[e]});
        adj[edges.tails[e]].push_back({edges.heads[e], edges.lengths[e]});
    }

    auto comp = components_from_adjacency(adj);
    for (std::size_t i = 0; i < n; ++i) {
        if (comp[i] != comp[0]) {
            detail::fail(str_printf(
                "geodesic_dists: neighbor graph is disconnected (components containing "
                "points 0 and %zu are not mutually reachable); increase k",
                i));
        }
    }

    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> full(n * n, inf);
    std::vector<double> dist(n);
    using Item = std::pair<double, std::uint32_t>;
    for (std::size_t s = 0; s < n; ++s) {
        std::fill(dist.begin(), dist.end(), inf);
        dist[s] = 0.0;
        std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
        heap.push({0.0, static_cast<std::uint32_t>(s)});
        while (!heap.empty()) {
            auto [du, u] = heap.top();
            heap.pop();
            if (du > dist[u]) continue;
            for (auto [v, w] : adj[u]) {
                double alt = du + w;
                if (alt < dist[v]) {
                    dist[v] = alt;
                    heap.push({alt, v});
                }
            }
        }
        for (std::size_t j = 0; j < n; ++j) full[s * n + j] = dist[j];
    }

    // Path sums in the two directions can differ in the last ulp; average.
    GeodesicDistances out{SymMatrix(n), SymMatrix(n)};
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            double v = 0.5 * (full[i * n + j] + full[j * n + i]);
            out.dists.set(i, j, v);
            out.sq_dists.set(i, j, v * v);
        }
    return out;
}

namespace {

// Gaussian elimination with partial pivoting on a k x k system; returns false
// when a pivot collapses.
bool solve_inplace(std::vector<double>& a, std::vector<double>& b, std::size_t k) {
    double scale = 0.0;
    for (double v : a) scale = std::max(scale, std::abs(v));
    const double tiny = scale > 0.0 ? 1e-13 * scale : 1e-300;
    for (std::size_t col = 0; col < k; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < k; ++r)
            if (std::abs(a[r * k + col]) > std::abs(a[piv * k + col])) piv = r;
        if (std::abs(a[piv * k + col]) <= tiny) return false;
        if (piv != col) {
            for (std::size_t c = 0; c < k; ++c) std::swap(a[piv * k + c], a[col * k + c]);
            std::swap(b[piv], b[col]);
        }
        double inv = 1.0 / a[col * k + col];
        for (std::size_t r = col + 1; r < k; ++r) {
            double f = a[r * k + col] * inv;
            if (f == 0.0) continue;
            for (std::size_t c = col; c < k; ++c) a[r * k + c] -= f * a[col * k + c];
            b[r] -= f * b[col];
        }
    }
    for (std::size_t col = k; col-- > 0;) {
        double s = b[col];
        for (std::size_t c = col + 1; c < k; ++c) s -= a[col * k + c] * b[c];
        b[col] = s / a[col * k + col];
    }
    return true;
}

template <typename LocalGram>
WeightMatrix solve_lle_rows(const NeighborGraph& g, const LocalGram& local_gram, double reg) {
    require(reg >= 0.0, "lle_weights: reg must be nonnegative");
    const std::size_t n = g.n, k = g.k;
    WeightMatrix wm;
    wm.n = n;
    wm.k = k;
    wm.cols = g.indices;
    wm.w.resize(n * k);

    std::vector<double> c(k * k), rhs(k);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t a = 0; a < k; ++a)
            for (std::size_t b = a; b < k; ++b) {
                double v = local_gram(i, a, b);
                c[a * k + b] = v;
                c[b * k + a] = v;
            }
        double trace = 0.0;
        for (std::size_t a = 0; a < k; ++a) trace += c[a * k + a];
        if (reg > 0.0) {
            double ridge = reg * (trace > 0.0 ? trace : 1.0);
            for (std::size_t a = 0; a < k; ++a) c[a * k + a] += ridge;
        }
        std::fill(rhs.begin(), rhs.end(), 1.0);
        if (!solve_inplace(c, rhs, k))
            detail::fail(str_printf(
                "lle_weights: singular local Gram system at point %zu; pass reg > 0", i));
        double sum = 0.0;
        for (double v : rhs) sum += v;
        if (sum == 0.0 || !std::isfinite(sum))
            detail::fail(str_printf("lle_weights: degenerate weight sum at point %zu", i));
        for (std::size_t a = 0; a < k; ++a) wm.w[i * k + a] = rhs[a] / sum;
    }
    return wm;
}

}  // namespace

WeightMatrix lle_weights(const DataMatrix& x, const NeighborGraph& g, double reg) {
    require(x.rows() == g.n, "lle_weights: graph/data size mismatch");
    const std::size_t d = x.cols();
    auto local_gram = [&](std::size_t i, std::size_t a, std::size_t b) {
        const double* xi = x.row(i);
        const double* xa = x.row(g.idx(i, a));
        const double* xb = x.row(g.idx(i, b));
        double s = 0.0;
        for (std::size_t t = 0; t < d; ++t) s += (xi[t] - xa[t]) * (xi[t] - xb[t]);
        return s;
    };
    return solve_lle_rows(g, local_gram, reg);
}

WeightMatrix lle_weights_kernel(const SymMatrix& kx, const NeighborGraph& g, double reg) {
    require(kx.size() == g.n, "lle_weights_kernel: kernel/graph size mismatch");
    auto local_gram = [&](std::size_t i, std::size_t a, std::size_t b) {
        std::size_t ja = g.idx(i, a), jb = g.idx(i, b);
        return kx(i, i) - kx(i, ja) - kx(i, jb) + kx(ja, jb);
    };
    return solve_lle_rows(g, local_gram, reg);
}

SymMatrix m_matrix(const WeightMatrix& w) {
    const std::size_t n = w.n, k = w.k;
    SymMatrix m = SymMatrix::identity(n);
    // -W - W^T lands in one mirrored add per entry; then W^T W accumulates
    // from per-row outer products.
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t a = 0; a < k; ++a) m.add(i, w.col(i, a), -w.weight(i, a));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t a = 0; a < k; ++a) {
            std::size_t ja = w.col(i, a);
            double wa = w.weight(i, a);
            for (std::size_t b = 0; b < k; ++b) {
                std::size_t jb = w.col(i, b);
                if (jb < ja) continue;
                m.add(ja, jb, wa * w.weight(i, b));
            }
        }
    return m;
}

SymMatrix lle_scalar_matrix(const WeightMatrix& w) {
    const std::size_t n = w.n, k = w.k;
    SymMatrix s(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t a = 0; a < k; ++a) s.add(i, w.col(i, a), w.weight(i, a));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t a = 0; a < k; ++a) {
            std::size_t ja = w.col(i, a);
            double wa = w.weight(i, a);
            for (std::size_t b = 0; b < k; ++b) {
                std::size_t jb = w.col(i, b);
                if (jb < ja) continue;
                s.add(ja, jb, -wa * w.weight(i, b));
            }
        }
    return s;
}

std::vector<std::uint32_t> support_components(const SymMatrix& affinity) {
    const std::size_t n = affinity.size();
    std::vector<std::vector<std::pair<std::uint32_t, double>>> adj(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (affinity(i, j) > 0.0) {
                adj[i].push_back({static_cast<std::uint32_t>(j), 1.0});
                adj[j].push_back({static_cast<std::uint32_t>(i), 1.0});
            }
    return components_from_adjacency(adj);
}

DataMatrix laplacian_eigenmaps_init(const SymMatrix& affinity, std::size_t d,
                                    std::uint64_t seed) {
    (void)seed;
    const std::size_t n = affinity.size();
    require(n >= 2, "laplacian_eigenmaps_init: need at least two points");
    require(d >= 1 && d + 1 <= n, "laplacian_eigenmaps_init: need d + 1 <= n");
    for (double v : affinity.values())
        require(v >= 0.0, "laplacian_eigenmaps_init: affinity must be nonnegative");

    auto comp = support_components(affinity);
    for (std::size_t i = 0; i < n; ++i)
        if (comp[i] != comp[0])
            detail::fail(str_printf(
                "laplacian_eigenmaps_init: affinity graph is disconnected (components "
                "containing points 0 and %zu are not mutually reachable)",
                i));

    std::vector<double> inv_sqrt_deg(n);
    for (std::size_t i = 0; i < n; ++i) {
        double deg = 0.0;
        for (std::size_t j = 0; j < n; ++j) deg += affinity(i, j);
        require(deg > 0.0, "laplacian_eigenmaps_init: zero-degree vertex");
        inv_sqrt_deg[i] = 1.0 / std::sqrt(deg);
    }
    SymMatrix lap(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            double v = -affinity(i, j) * inv_sqrt_deg[i] * inv_sqrt_deg[j];
            if (i == j) v += 1.0;
            lap.set(i, j, v);
        }

    EigenPairs eig = sym_eigh(lap, d + 1, EigenEnd::kSmallest);
    DataMatrix y(n, d);
    for (std::size_t c = 0; c < d; ++c) {
        std::size_t src = c + 1;  // skip the trivial near-zero eigenvector
        double sign = 1.0, max_abs = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double v = eig.vectors(i, src);
            if (std::abs(v) > 1e-12) {
                sign = v > 0.0 ? 1.0 : -1.0;
                break;
            }
        }
        for (std::size_t i = 0; i < n; ++i)
            max_abs = std::max(max_abs, std::abs(eig.vectors(i, src)));
        require(max_abs > 0.0, "laplacian_eigenmaps_init: zero eigenvector");
        double scale = 10.0 * sign / max_abs;
        for (std::size_t i = 0; i < n; ++i) y(i, c) = scale * eig.vectors(i, src);
    }
    return y;
}

}  // namespace ardr
