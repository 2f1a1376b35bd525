#include "rtm/complex.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>

#include "rtm/detail/disjoint_sets.hpp"

namespace rtm {

namespace {

// The two faces of a tetrahedron that contain edge {a, b}: those opposite the
// remaining two vertices, lower one first.
std::array<int, 2> faces_containing(int a, int b) {
    std::array<int, 2> out{};
    int k = 0;
    for (int v = 0; v < 4; ++v)
        if (v != a && v != b) out[k++] = v;
    return out;
}

} // namespace

EdgeOrbits build_edge_orbits(const GluingInstance& instance) {
    const std::int64_t n = instance.n();
    EdgeOrbits out;
    out.n = n;
    out.orbit_of_wedge.assign(6 * n, -1);
    out.wedge_direction.assign(6 * n, 0);

    std::vector<std::int64_t> tets;
    for (std::int64_t w0 = 0; w0 < 6 * n; ++w0) {
        if (out.orbit_of_wedge[w0] >= 0) continue;
        const std::int64_t id = out.count();
        EdgeOrbit orbit;
        orbit.id = id;

        const auto [a0, b0] = kEdgeSlot[w0 % 6];
        const auto start_faces = faces_containing(a0, b0);
        std::int64_t t = w0 / 6;
        int a = a0, b = b0;
        int exit_face = start_faces[0];
        while (true) {
            const Wedge w{t, edge_slot(a, b)};
            if (out.orbit_of_wedge[w.index()] >= 0)
                throw Error(ErrorCode::OrientationInconsistency, "wedge visited twice while tracing an edge");
            out.orbit_of_wedge[w.index()] = id;
            out.wedge_direction[w.index()] = a < b ? 1 : -1;
            orbit.wedges.push_back(w);

            const std::int64_t face = 4 * t + exit_face;
            const std::int64_t partner = instance.partner_index(face);
            const std::int64_t t2 = partner / 4;
            const int entry = static_cast<int>(partner % 4);
            const int a2 = instance.map_local_vertex(face, a);
            const int b2 = instance.map_local_vertex(face, b);
            if (t2 == w0 / 6 && edge_slot(a2, b2) == w0 % 6) {
                if (entry != start_faces[1] || a2 != a0)
                    throw Error(ErrorCode::OrientationInconsistency, "edge identified with itself reversed");
                break;
            }
            t = t2;
            a = a2;
            b = b2;
            exit_face = 6 - a2 - b2 - entry;
        }

        tets.clear();
        for (const auto& w : orbit.wedges) tets.push_back(w.tet);
        std::sort(tets.begin(), tets.end());
        orbit.simple = std::adjacent_find(tets.begin(), tets.end()) == tets.end();
        out.orbits.push_back(std::move(orbit));
    }
    return out;
}

std::int64_t EdgeHistogram::count(std::int64_t k) const {
    const auto it = all.find(k);
    return it == all.end() ? 0 : it->second;
}

std::int64_t EdgeHistogram::simple_count(std::int64_t k) const {
    const auto it = simple.find(k);
    return it == simple.end() ? 0 : it->second;
}

EdgeHistogram edge_histogram(const EdgeOrbits& orbits) {
    EdgeHistogram h;
    h.total = orbits.count();
    for (const auto& o : orbits.orbits) {
        ++h.all[o.length()];
        if (o.simple) ++h.simple[o.length()];
    }
    return h;
}

std::int64_t pair_statistic(const EdgeOrbits& orbits, std::int64_t K, std::int64_t L) {
    if (K < 1 || L < 1) throw Error(ErrorCode::InvalidArgument, "K and L must be positive");
    const std::int64_t cap = std::max(K, L);
    std::unordered_map<std::int64_t, std::vector<std::int64_t>> by_tet;
    for (const auto& o : orbits.orbits) {
        if (o.length() > cap) continue;
        std::vector<std::int64_t> tets;
        for (const auto& w : o.wedges) tets.push_back(w.tet);
        std::sort(tets.begin(), tets.end());
        tets.erase(std::unique(tets.begin(), tets.end()), tets.end());
        for (const auto t : tets) by_tet[t].push_back(o.id);
    }
    auto len = [&](std::int64_t id) { return orbits.orbits[id].length(); };
    std::set<std::pair<std::int64_t, std::int64_t>> pairs;
    for (const auto& [tet, ids] : by_tet) {
        for (std::size_t i = 0; i < ids.size(); ++i) {
            for (std::size_t j = i + 1; j < ids.size(); ++j) {
                const auto x = std::min(ids[i], ids[j]);
                const auto y = std::max(ids[i], ids[j]);
                const bool fits = (len(x) <= K && len(y) <= L) || (len(x) <= L && len(y) <= K);
                if (fits) pairs.emplace(x, y);
            }
        }
    }
    return static_cast<std::int64_t>(pairs.size());
}

VertexPartition vertex_orbits(const GluingInstance& instance) {
    const std::int64_t n = instance.n();
    detail::DisjointSets sets(4 * n);
    for (std::int64_t face = 0; face < 4 * n; ++face) {
        const std::int64_t partner = instance.partner_index(face);
        if (partner < face) continue;
        const std::int64_t t = face / 4;
        const std::int64_t t2 = partner / 4;
        for (const int v : kFaceCycle[face % 4])
            sets.unite(vertex_label(t, v), vertex_label(t2, instance.map_local_vertex(face, v)));
    }
    VertexPartition out;
    out.count = sets.relabel(out.class_of);
    return out;
}

BoundarySurface build_boundary_surface(const GluingInstance& instance, const EdgeOrbits& orbits) {
    const std::int64_t n = instance.n();
    BoundarySurface s;
    s.n = n;
    s.side_partner.assign(12 * n, -1);

    detail::DisjointSets corners(12 * n);
    detail::DisjointSets triangles(4 * n);
    for (std::int64_t face = 0; face < 4 * n; ++face) {
        const std::int64_t partner = instance.partner_index(face);
        const std::int64_t t = face / 4;
        const int g = static_cast<int>(face % 4);
        const std::int64_t t2 = partner / 4;
        const int g2 = static_cast<int>(partner % 4);
        for (const int i : kFaceCycle[g]) {
            const int i2 = instance.map_local_vertex(face, i);
            s.side_partner[side_index(t, i, g)] = side_index(t2, i2, g2);
            if (partner < face) continue;
            triangles.unite(4 * t + i, 4 * t2 + i2);
            for (const int j : kFaceCycle[g]) {
                if (j == i) continue;
                corners.unite(corner_index(t, i, j), corner_index(t2, i2, instance.map_local_vertex(face, j)));
            }
        }
    }
    s.vertex_count = corners.relabel(s.corner_class);
    if (s.vertex_count != 2 * orbits.count())
        throw Error(ErrorCode::OrientationInconsistency, "boundary vertex count differs from twice the edge count");

    const std::int64_t component_count = triangles.relabel(s.component_of_triangle);
    s.components.assign(component_count, {});
    std::vector<std::int64_t> seen_in(s.vertex_count, -1);
    for (std::int64_t tri = 0; tri < 4 * n; ++tri) {
        auto& c = s.components[s.component_of_triangle[tri]];
        c.faces += 1;
        // Each triangle has three sides, each shared by two triangles.
        c.edges += 3;
        const std::int64_t t = tri / 4;
        const int i = static_cast<int>(tri % 4);
        for (int m = 0; m < 3; ++m) {
            const std::int64_t v = s.corner_class[12 * t + 3 * i + m];
            if (seen_in[v] < 0) {
                seen_in[v] = s.component_of_triangle[tri];
                c.vertices += 1;
            }
        }
    }
    for (auto& c : s.components) c.edges /= 2;
    return s;
}

bool components_match_vertex_orbits(const BoundarySurface& surface, const VertexPartition& vertices) {
    const std::int64_t triangles = surface.face_count();
    if (static_cast<std::int64_t>(vertices.class_of.size()) != triangles) return false;
    if (static_cast<std::int64_t>(surface.components.size()) != vertices.count) return false;
    std::vector<std::int64_t> comp_to_class(surface.components.size(), -1);
    std::vector<std::int64_t> class_to_comp(vertices.count, -1);
    for (std::int64_t tri = 0; tri < triangles; ++tri) {
        const auto c = surface.component_of_triangle[tri];
        const auto v = vertices.class_of[tri];
        if (comp_to_class[c] < 0) comp_to_class[c] = v;
        if (class_to_comp[v] < 0) class_to_comp[v] = c;
        if (comp_to_class[c] != v || class_to_comp[v] != c) return false;
    }
    return true;
}

std::int64_t BoundaryInvariants::total_genus() const {
    std::int64_t g = 0;
    for (const auto x : genera) g += x;
    return g;
}

BoundaryInvariants boundary_invariants(const BoundarySurface& surface) {
    BoundaryInvariants out;
    out.component_count = static_cast<std::int64_t>(surface.components.size());
    for (const auto& c : surface.components) {
        const std::int64_t chi = c.euler_characteristic();
        if (chi % 2 != 0) throw Error(ErrorCode::OddEulerCharacteristic, "boundary component with chi = " + std::to_string(chi));
        out.euler_characteristics.push_back(chi);
        out.genera.push_back((2 - chi) / 2);
    }
    return out;
}

std::int64_t default_cutoff(std::int64_t n) {
    std::int64_t c = 1;
    while (c * c * c * c < n) ++c;
    return c;
}

namespace {

bool dual_is_simple(const GluingInstance& instance) {
    std::set<std::pair<std::int64_t, std::int64_t>> seen;
    for (const auto& p : instance.pairs()) {
        const std::int64_t a = p.first.tet;
        const std::int64_t b = p.second.tet;
        if (a == b) return false;
        if (!seen.emplace(std::min(a, b), std::max(a, b)).second) return false;
    }
    return true;
}

} // namespace

GenericityReport genericity_check(const GluingInstance& instance, const EdgeOrbits& orbits, std::int64_t cutoff) {
    if (cutoff < 1) throw Error(ErrorCode::InvalidArgument, "cutoff must be positive");
    GenericityReport r;
    r.dual_simple = dual_is_simple(instance);
    r.all_short_edges_simple = std::all_of(orbits.orbits.begin(), orbits.orbits.end(),
                                           [&](const EdgeOrbit& o) { return o.length() > cutoff || o.simple; });
    r.no_adjacent_short_edges = pair_statistic(orbits, cutoff, cutoff) == 0;
    return r;
}

CuspSpectrum cusp_spectrum(const EdgeOrbits& orbits) {
    if (orbits.orbits.empty()) throw Error(ErrorCode::InvalidArgument, "no edge orbits");
    CuspSpectrum s;
    for (const auto& o : orbits.orbits) {
        s.lengths.push_back(o.length());
        s.total += o.length();
    }
    std::sort(s.lengths.begin(), s.lengths.end(), std::greater<>());
    for (const auto l : s.lengths) s.fractions.push_back(static_cast<double>(l) / static_cast<double>(s.total));
    return s;
}

ComplexSummary summarize(const GluingInstance& instance) {
    const EdgeOrbits orbits = build_edge_orbits(instance);
    const VertexPartition vertices = vertex_orbits(instance);
    const BoundarySurface surface = build_boundary_surface(instance, orbits);
    const BoundaryInvariants inv = boundary_invariants(surface);
    ComplexSummary s;
    s.V = vertices.count;
    s.edges = edge_histogram(orbits);
    s.boundary_components = inv.component_count;
    s.genera = inv.genera;
    s.boundary_euler_characteristic = surface.euler_characteristic();
    return s;
}

} // namespace rtm
