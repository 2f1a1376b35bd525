#include "rtm/homology.hpp"

#include "rtm/error.hpp"

namespace rtm {

std::string to_string(ComplexKind kind) {
    switch (kind) {
    case ComplexKind::Absolute: return "absolute";
    case ComplexKind::Relative: return "relative";
    case ComplexKind::Double: return "double";
    }
    return "unknown";
}

void verify_chain_complex(const ChainComplex& complex) {
    for (int i = 1; i <= 2; ++i) {
        if (!multiply(complex.boundary[i], complex.boundary[i + 1]).is_zero())
            throw Error(ErrorCode::OrientationInconsistency,
                        to_string(complex.kind) + " complex: d" + std::to_string(i) + " d" + std::to_string(i + 1) + " != 0");
    }
}

namespace {

// Signed interior edge of the segment a -> b in tetrahedron t.
std::pair<std::int64_t, int> oriented_orbit(const EdgeOrbits& orbits, std::int64_t t, int a, int b) {
    const std::int64_t w = 6 * t + edge_slot(a, b);
    const int sign = (a < b ? 1 : -1) * orbits.wedge_direction[w];
    return {orbits.orbit_of_wedge[w], sign};
}

// Adds the boundary of every hexagon, seen from the first face of its pair,
// restricted to interior edges. Hexagon p is column hex_offset + p, interior
// edge o is row edge_offset + o.
void add_hexagon_interior(IntegerMatrix& d2, const GluingInstance& instance, const EdgeOrbits& orbits,
                          std::int64_t hex_offset, std::int64_t edge_offset) {
    const auto& pairs = instance.pairs();
    for (std::size_t p = 0; p < pairs.size(); ++p) {
        const FaceId f = pairs[p].first;
        const auto& c = kFaceCycle[f.face];
        for (int m = 0; m < 3; ++m) {
            const auto [o, sign] = oriented_orbit(orbits, f.tet, c[m], c[(m + 1) % 3]);
            d2.add(edge_offset + o, hex_offset + static_cast<std::int64_t>(p), sign);
        }
    }
}

// Adds the boundary of each tetrahedron restricted to hexagons.
void add_tetrahedron_hexagons(IntegerMatrix& d3, const GluingInstance& instance, std::int64_t tet_offset,
                              std::int64_t hex_offset) {
    for (std::int64_t face = 0; face < 4 * instance.n(); ++face) {
        const FaceId f = FaceId::from_index(face);
        d3.add(hex_offset + instance.pair_index(f), tet_offset + f.tet, instance.is_first(f) ? 1 : -1);
    }
}

ChainComplex build_truncated(const GluingInstance& instance, const EdgeOrbits& orbits, const BoundarySurface& surface,
                             int copies) {
    const std::int64_t n = instance.n();
    const std::int64_t E = orbits.count();
    if (surface.vertex_count != 2 * E) throw Error(ErrorCode::InvalidArgument, "surface does not match edge orbits");

    ChainComplex cx;
    cx.kind = copies == 1 ? ComplexKind::Absolute : ComplexKind::Double;
    const std::int64_t bedge_offset = copies * E;
    const std::int64_t tri_offset = copies * 2 * n;
    cx.cells = {2 * E, copies * E + 6 * n, copies * 2 * n + 4 * n, copies * n};
    IntegerMatrix d1(cx.cells[0], cx.cells[1]);
    IntegerMatrix d2(cx.cells[1], cx.cells[2]);
    IntegerMatrix d3(cx.cells[2], cx.cells[3]);

    // Boundary edges: each is represented by its side on the first face of a
    // pair, directed along that face's outward cycle, i.e. from the corner
    // toward the previous vertex to the corner toward the next one.
    std::vector<std::int64_t> bedge_of_side(12 * n, -1);
    std::vector<int> bedge_sign(12 * n, 0);
    std::int64_t next = 0;
    const auto& pairs = instance.pairs();
    for (std::size_t p = 0; p < pairs.size(); ++p) {
        const FaceId f = pairs[p].first;
        const auto& c = kFaceCycle[f.face];
        for (int m = 0; m < 3; ++m) {
            const int i = c[m];
            const std::int64_t s = side_index(f.tet, i, f.face);
            const std::int64_t id = bedge_offset + next++;
            bedge_of_side[s] = id;
            bedge_sign[s] = 1;
            bedge_of_side[surface.side_partner[s]] = id;
            bedge_sign[surface.side_partner[s]] = -1;
            d1.add(surface.corner_class[corner_index(f.tet, i, c[(m + 1) % 3])], id, 1);
            d1.add(surface.corner_class[corner_index(f.tet, i, c[(m + 2) % 3])], id, -1);
            for (int k = 0; k < copies; ++k) d2.add(id, k * 2 * n + static_cast<std::int64_t>(p), 1);
        }
    }

    for (int k = 0; k < copies; ++k) {
        for (const auto& orbit : orbits.orbits) {
            const Wedge w = orbit.wedges.front();
            // The first wedge is traversed from its lower to its higher vertex.
            const auto [a, b] = kEdgeSlot[w.slot];
            d1.add(surface.corner_class[corner_index(w.tet, b, a)], k * E + orbit.id, 1);
            d1.add(surface.corner_class[corner_index(w.tet, a, b)], k * E + orbit.id, -1);
        }
        add_hexagon_interior(d2, instance, orbits, k * 2 * n, k * E);
        add_tetrahedron_hexagons(d3, instance, k * n, k * 2 * n);
    }

    // Triangles carry the outward orientation of their tetrahedron, so they
    // traverse each side against the adjacent hexagon.
    for (std::int64_t t = 0; t < n; ++t) {
        for (int i = 0; i < 4; ++i) {
            const std::int64_t tri = tri_offset + 4 * t + i;
            for (int f = 0; f < 4; ++f) {
                if (f == i) continue;
                const std::int64_t s = side_index(t, i, f);
                d2.add(bedge_of_side[s], tri, -bedge_sign[s]);
            }
            for (int k = 0; k < copies; ++k) d3.add(tri, k * n + t, 1);
        }
    }

    d1.finalize();
    d2.finalize();
    d3.finalize();
    cx.boundary = {IntegerMatrix(0, cx.cells[0]), std::move(d1), std::move(d2), std::move(d3)};
    verify_chain_complex(cx);
    return cx;
}

} // namespace

ChainComplex build_relative_complex(const GluingInstance& instance, const EdgeOrbits& orbits) {
    const std::int64_t n = instance.n();
    const std::int64_t E = orbits.count();
    ChainComplex cx;
    cx.kind = ComplexKind::Relative;
    cx.cells = {0, E, 2 * n, n};
    IntegerMatrix d2(E, 2 * n);
    IntegerMatrix d3(2 * n, n);
    add_hexagon_interior(d2, instance, orbits, 0, 0);
    add_tetrahedron_hexagons(d3, instance, 0, 0);
    d2.finalize();
    d3.finalize();
    cx.boundary = {IntegerMatrix(0, 0), IntegerMatrix(0, E), std::move(d2), std::move(d3)};
    verify_chain_complex(cx);
    return cx;
}

ChainComplex build_absolute_complex(const GluingInstance& instance, const EdgeOrbits& orbits,
                                    const BoundarySurface& surface) {
    return build_truncated(instance, orbits, surface, 1);
}

ChainComplex build_double_complex(const GluingInstance& instance, const EdgeOrbits& orbits,
                                  const BoundarySurface& surface) {
    return build_truncated(instance, orbits, surface, 2);
}

HomologySummary homology_summary(const ChainComplex& complex, std::size_t nonzero_cap) {
    std::array<std::int64_t, 5> rank{};
    HomologySummary out;
    out.kind = complex.kind;
    for (int i = 1; i <= 3; ++i) {
        const IntegerMatrix& d = complex.boundary[i];
        if (d.rows() == 0 || d.cols() == 0) continue;
        SmithResult snf = smith_normal_form(d, nonzero_cap);
        rank[i] = snf.rank;
        if (i == 2) out.torsion = std::move(snf.invariant_factors);
    }
    for (int i = 0; i <= 3; ++i) out.betti[i] = complex.cells[i] - rank[i] - rank[i + 1];
    return out;
}

HeegaardBounds heegaard_bounds(std::int64_t E, std::int64_t n, std::int64_t b1_double) {
    return {b1_double, n + 1 + E};
}

HomologyPanel homology_panel(const GluingInstance& instance, const EdgeOrbits& orbits, const BoundarySurface& surface,
                             std::size_t nonzero_cap) {
    HomologyPanel panel;
    panel.relative = homology_summary(build_relative_complex(instance, orbits), nonzero_cap);
    panel.absolute = homology_summary(build_absolute_complex(instance, orbits, surface), nonzero_cap);
    panel.doubled = homology_summary(build_double_complex(instance, orbits, surface), nonzero_cap);
    panel.heegaard = heegaard_bounds(orbits.count(), instance.n(), panel.b1_double());
    return panel;
}

} // namespace rtm
