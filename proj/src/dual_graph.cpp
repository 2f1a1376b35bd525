#include "rtm/dual_graph.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "rtm/error.hpp"

namespace rtm {

MultiGraph::MultiGraph(std::int64_t vertices, std::vector<std::pair<std::int64_t, std::int64_t>> edges)
    : n_(vertices), edges_(std::move(edges)) {
    if (vertices < 0) throw Error(ErrorCode::InvalidArgument, "negative vertex count");
    std::vector<std::int64_t> degree(n_, 0);
    for (auto& [i, j] : edges_) {
        if (i < 0 || j < 0 || i >= n_ || j >= n_) throw Error(ErrorCode::InvalidArgument, "edge endpoint out of range");
        if (j < i) std::swap(i, j);
        ++degree[i];
        ++degree[j];
    }
    offset_.assign(n_ + 1, 0);
    for (std::int64_t v = 0; v < n_; ++v) offset_[v + 1] = offset_[v] + degree[v];
    adjacency_.resize(offset_[n_]);
    std::vector<std::int64_t> fill(offset_.begin(), offset_.end() - 1);
    for (const auto& [i, j] : edges_) {
        adjacency_[fill[i]++] = j;
        adjacency_[fill[j]++] = i;
    }
}

std::int64_t MultiGraph::regular_degree() const {
    if (n_ == 0) return 0;
    const std::int64_t d = degree(0);
    for (std::int64_t v = 1; v < n_; ++v)
        if (degree(v) != d) return -1;
    return d;
}

MultiGraph build_dual(const GluingInstance& instance) {
    std::vector<std::pair<std::int64_t, std::int64_t>> edges;
    edges.reserve(instance.pairs().size());
    for (const auto& p : instance.pairs()) edges.emplace_back(p.first.tet, p.second.tet);
    return MultiGraph(instance.n(), std::move(edges));
}

bool is_simple(const MultiGraph& g) {
    auto edges = g.edges();
    std::sort(edges.begin(), edges.end());
    for (std::size_t k = 0; k < edges.size(); ++k) {
        if (edges[k].first == edges[k].second) return false;
        if (k > 0 && edges[k] == edges[k - 1]) return false;
    }
    return true;
}

bool is_connected(const MultiGraph& g) {
    const std::int64_t n = g.vertex_count();
    if (n == 0) return true;
    std::vector<std::uint8_t> seen(n, 0);
    std::vector<std::int64_t> queue{0};
    seen[0] = 1;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        for (const auto u : g.neighbors(queue[head])) {
            if (!seen[u]) {
                seen[u] = 1;
                queue.push_back(u);
            }
        }
    }
    return static_cast<std::int64_t>(queue.size()) == n;
}

DiameterResult diameter(const MultiGraph& g) {
    DiameterResult out;
    out.connected = is_connected(g);
    if (!out.connected) return out;
    const std::int64_t n = g.vertex_count();
    out.diameter = 0;
    constexpr int kWords = 4;
    using Bits = std::array<std::uint64_t, kWords>;
    std::vector<Bits> visited(n);
    std::vector<Bits> frontier(n);
    std::vector<Bits> next(n);
    for (std::int64_t base = 0; base < n; base += 64 * kWords) {
        const std::int64_t batch = std::min<std::int64_t>(64 * kWords, n - base);
        for (std::int64_t v = 0; v < n; ++v) visited[v] = frontier[v] = Bits{};
        for (std::int64_t s = 0; s < batch; ++s) {
            visited[base + s][s / 64] |= std::uint64_t{1} << (s % 64);
            frontier[base + s] = visited[base + s];
        }
        for (std::int64_t level = 1;; ++level) {
            bool grew = false;
            for (std::int64_t v = 0; v < n; ++v) {
                Bits acc{};
                for (const auto u : g.neighbors(v))
                    for (int k = 0; k < kWords; ++k) acc[k] |= frontier[u][k];
                for (int k = 0; k < kWords; ++k) {
                    acc[k] &= ~visited[v][k];
                    grew = grew || acc[k] != 0;
                }
                next[v] = acc;
            }
            if (!grew) break;
            out.diameter = std::max(out.diameter, level);
            for (std::int64_t v = 0; v < n; ++v)
                for (int k = 0; k < kWords; ++k) visited[v][k] |= next[v][k];
            std::swap(frontier, next);
        }
    }
    return out;
}

namespace {

SpectralReport dense_gap(const MultiGraph& g, const Eigen::VectorXd& inv_sqrt_degree) {
    const std::int64_t n = g.vertex_count();
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(n, n);
    for (std::int64_t v = 0; v < n; ++v)
        for (const auto u : g.neighbors(v)) M(v, u) += inv_sqrt_degree[v] * inv_sqrt_degree[u];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(M, Eigen::EigenvaluesOnly);
    SpectralReport r;
    r.method = "dense";
    r.lambda1 = 1.0 - solver.eigenvalues()[n - 2];
    r.tolerance = 1e-12;
    r.iterations = 0;
    return r;
}

} // namespace

SpectralReport spectral_gap(const MultiGraph& g, const SpectralOptions& options) {
    const std::int64_t n = g.vertex_count();
    if (n < 2) throw Error(ErrorCode::InvalidArgument, "spectral gap needs at least two vertices");
    if (!is_connected(g)) throw Error(ErrorCode::DisconnectedGraph, "spectral gap of a disconnected graph");

    Eigen::VectorXd inv_sqrt_degree(n);
    Eigen::VectorXd top(n);
    for (std::int64_t v = 0; v < n; ++v) {
        const double d = static_cast<double>(g.degree(v));
        inv_sqrt_degree[v] = 1.0 / std::sqrt(d);
        top[v] = std::sqrt(d);
    }
    top.normalize();

    const bool dense = options.method == SpectralMethod::Dense ||
                       (options.method == SpectralMethod::Auto && n <= options.dense_threshold);
    if (dense) return dense_gap(g, inv_sqrt_degree);

    LanczosOptions lo;
    lo.tolerance = options.tolerance;
    lo.max_iterations = options.max_iterations;
    const auto apply = [&](const Eigen::VectorXd& x, Eigen::VectorXd& y) {
        y.resize(n);
        for (std::int64_t v = 0; v < n; ++v) {
            double s = 0.0;
            for (const auto u : g.neighbors(v)) s += inv_sqrt_degree[u] * x[u];
            y[v] = inv_sqrt_degree[v] * s;
        }
    };
    const LanczosResult res = largest_eigenvalue_orthogonal(apply, top, lo);
    SpectralReport r;
    r.method = "lanczos";
    r.lambda1 = 1.0 - res.eigenvalue;
    r.tolerance = options.tolerance;
    r.iterations = res.iterations;
    return r;
}

MultiGraph double_graph(const MultiGraph& g) {
    const std::int64_t n = g.vertex_count();
    std::vector<std::pair<std::int64_t, std::int64_t>> edges;
    edges.reserve(2 * g.edges().size() + 4 * n);
    for (const auto& [i, j] : g.edges()) {
        edges.emplace_back(i, j);
        edges.emplace_back(i + n, j + n);
    }
    for (std::int64_t v = 0; v < n; ++v)
        for (int k = 0; k < 4; ++k) edges.emplace_back(v, v + n);
    return MultiGraph(2 * n, std::move(edges));
}

} // namespace rtm
