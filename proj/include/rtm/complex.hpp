#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "rtm/core_model.hpp"

namespace rtm {

// One corner of an interior edge: edge slot `slot` of tetrahedron `tet`.
struct Wedge {
    std::int64_t tet = 0;
    int slot = 0;

    constexpr std::int64_t index() const noexcept { return 6 * tet + slot; }
    friend constexpr auto operator<=>(const Wedge&, const Wedge&) = default;
};

struct EdgeOrbit {
    std::int64_t id = 0;
    // Cyclic dihedral order around the edge.
    std::vector<Wedge> wedges;
    bool simple = false;

    std::int64_t length() const noexcept { return static_cast<std::int64_t>(wedges.size()); }
};

// All interior edges of an instance plus per-wedge lookup tables. Each orbit
// carries an orientation: the direction of its first wedge from the lower to
// the higher local vertex, transported around the cycle.
struct EdgeOrbits {
    std::int64_t n = 0;
    std::vector<EdgeOrbit> orbits;
    std::vector<std::int64_t> orbit_of_wedge;
    // +1 when the orbit direction runs from the lower to the higher local
    // vertex of the wedge, -1 otherwise.
    std::vector<std::int8_t> wedge_direction;

    std::int64_t count() const noexcept { return static_cast<std::int64_t>(orbits.size()); }
};

EdgeOrbits build_edge_orbits(const GluingInstance& instance);

struct EdgeHistogram {
    std::int64_t total = 0;                    // E
    std::map<std::int64_t, std::int64_t> all;  // k -> E_k
    std::map<std::int64_t, std::int64_t> simple;  // k -> simple E_k

    std::int64_t count(std::int64_t k) const;
    std::int64_t simple_count(std::int64_t k) const;
};

EdgeHistogram edge_histogram(const EdgeOrbits& orbits);

// Unordered pairs of distinct orbits, one of length <= K and the other of
// length <= L, that meet a common tetrahedron.
std::int64_t pair_statistic(const EdgeOrbits& orbits, std::int64_t K, std::int64_t L);

struct VertexPartition {
    std::vector<std::int64_t> class_of;  // per global vertex label
    std::int64_t count = 0;              // V
};

VertexPartition vertex_orbits(const GluingInstance& instance);

struct SurfaceComponent {
    std::int64_t vertices = 0;
    std::int64_t edges = 0;
    std::int64_t faces = 0;

    std::int64_t euler_characteristic() const noexcept { return vertices - edges + faces; }
};

// Triangulated boundary of the truncated complex. Triangle 4t+i sits at
// corner i of tetrahedron t. Its sides and corners are indexed 12t + 3i + m,
// where m ranks the other local vertex j (for corners) or the face f (for
// sides) among {0..3} \ {i}.
struct BoundarySurface {
    std::int64_t n = 0;
    std::vector<std::int64_t> side_partner;     // 12n, perfect matching
    std::vector<std::int64_t> corner_class;     // 12n -> boundary vertex id
    std::int64_t vertex_count = 0;
    std::vector<std::int64_t> component_of_triangle;  // 4n
    std::vector<SurfaceComponent> components;

    std::int64_t face_count() const noexcept { return 4 * n; }
    std::int64_t edge_count() const noexcept { return static_cast<std::int64_t>(side_partner.size()) / 2; }
    std::int64_t euler_characteristic() const noexcept { return vertex_count - edge_count() + face_count(); }
};

constexpr std::int64_t corner_index(std::int64_t tet, int at, int toward) noexcept {
    return 12 * tet + 3 * at + (toward < at ? toward : toward - 1);
}
constexpr std::int64_t side_index(std::int64_t tet, int at, int face) noexcept {
    return 12 * tet + 3 * at + (face < at ? face : face - 1);
}

BoundarySurface build_boundary_surface(const GluingInstance& instance, const EdgeOrbits& orbits);

// True when triangle 4t+i lies in the component determined by the vertex
// orbit of label 4t+i, i.e. the two partitions of the triangles coincide.
bool components_match_vertex_orbits(const BoundarySurface& surface, const VertexPartition& vertices);

struct BoundaryInvariants {
    std::int64_t component_count = 0;
    std::vector<std::int64_t> euler_characteristics;
    std::vector<std::int64_t> genera;

    std::int64_t total_genus() const;
};

// Throws OddEulerCharacteristic if a component has odd chi.
BoundaryInvariants boundary_invariants(const BoundarySurface& surface);

struct GenericityReport {
    bool dual_simple = false;
    bool all_short_edges_simple = false;
    bool no_adjacent_short_edges = false;

    bool all() const noexcept { return dual_simple && all_short_edges_simple && no_adjacent_short_edges; }
};

// Default cutoff: ceil(n^(1/4)).
std::int64_t default_cutoff(std::int64_t n);

GenericityReport genericity_check(const GluingInstance& instance, const EdgeOrbits& orbits, std::int64_t cutoff);

struct CuspSpectrum {
    std::vector<std::int64_t> lengths;  // non-increasing
    std::int64_t total = 0;             // 6n
    std::vector<double> fractions;

    double largest() const { return fractions.empty() ? 0.0 : fractions[0]; }
    double second_largest() const { return fractions.size() < 2 ? 0.0 : fractions[1]; }
    std::size_t parts() const { return lengths.size(); }
};

CuspSpectrum cusp_spectrum(const EdgeOrbits& orbits);

struct ComplexSummary {
    std::int64_t V = 0;
    EdgeHistogram edges;
    std::int64_t boundary_components = 0;
    std::vector<std::int64_t> genera;
    std::int64_t boundary_euler_characteristic = 0;
};

ComplexSummary summarize(const GluingInstance& instance);

} // namespace rtm
