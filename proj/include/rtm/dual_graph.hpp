#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rtm/core_model.hpp"
#include "rtm/lanczos.hpp"

namespace rtm {

// Undirected multigraph with loops. Stored edges have i <= j; a loop adds its
// vertex twice to its own adjacency list, so it counts 2 toward the degree.
class MultiGraph {
public:
    MultiGraph() = default;
    MultiGraph(std::int64_t vertices, std::vector<std::pair<std::int64_t, std::int64_t>> edges);

    std::int64_t vertex_count() const noexcept { return n_; }
    std::int64_t edge_count() const noexcept { return static_cast<std::int64_t>(edges_.size()); }
    const std::vector<std::pair<std::int64_t, std::int64_t>>& edges() const noexcept { return edges_; }

    std::span<const std::int64_t> neighbors(std::int64_t v) const {
        return {adjacency_.data() + offset_[v], adjacency_.data() + offset_[v + 1]};
    }
    std::int64_t degree(std::int64_t v) const { return offset_[v + 1] - offset_[v]; }
    // The common degree, or -1 if the graph is not regular.
    std::int64_t regular_degree() const;

private:
    std::int64_t n_ = 0;
    std::vector<std::pair<std::int64_t, std::int64_t>> edges_;
    std::vector<std::int64_t> offset_{0};
    std::vector<std::int64_t> adjacency_;
};

// One vertex per tetrahedron, one edge per glued pair; 4-regular.
MultiGraph build_dual(const GluingInstance& instance);

bool is_simple(const MultiGraph& g);
bool is_connected(const MultiGraph& g);

struct DiameterResult {
    bool connected = false;
    std::int64_t diameter = -1;  // -1 stands for infinity
};

// Exact diameter by BFS from every vertex, 256 sources at a time.
DiameterResult diameter(const MultiGraph& g);

enum class SpectralMethod { Auto, Dense, Lanczos };

struct SpectralOptions {
    double tolerance = 1e-8;
    std::int64_t max_iterations = 100000;
    SpectralMethod method = SpectralMethod::Auto;
    // Auto uses the dense solver up to this many vertices.
    std::int64_t dense_threshold = 300;
};

struct SpectralReport {
    double lambda1 = 0.0;
    double tolerance = 0.0;
    std::int64_t iterations = 0;
    std::string method;
};

// Smallest nonzero eigenvalue of the normalized Laplacian I - D^-1/2 A D^-1/2.
// Throws DisconnectedGraph or NoConvergence.
SpectralReport spectral_gap(const MultiGraph& g, const SpectralOptions& options = {});

// Two copies of g with four parallel edges joining each vertex to its copy.
MultiGraph double_graph(const MultiGraph& g);

} // namespace rtm
