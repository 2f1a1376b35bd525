#include <algorithm>
#include <numeric>
#include <set>

#include "doctest.h"

#include "brute_force.hpp"
#include "rtm/complex.hpp"
#include "rtm/core_model.hpp"

using namespace rtm;

namespace {

std::int64_t weighted_sum(const EdgeHistogram& h) {
    std::int64_t s = 0;
    for (auto [k, c] : h.all) s += k * c;
    return s;
}

// True when some face is glued to another face of its own tetrahedron by a
// map fixing the common edge pointwise.
bool has_folded_edge(const GluingInstance& g) {
    for (const auto& p : g.pairs()) {
        if (p.first.tet != p.second.tet) continue;
        const auto m = face_map(g, p.first);
        int fixed = 0;
        for (auto [a, b] : m) fixed += a == b;
        if (fixed == 2) return true;
    }
    return false;
}

} // namespace

TEST_CASE("n=1 exhaustive statistics match the oracle") {
    for (const auto& g : enumerate_all(1)) {
        const auto expect = oracle::brute_force(g, 1);
        const auto orbits = build_edge_orbits(g);
        const auto h = edge_histogram(orbits);
        CHECK(h.total == expect.E);
        CHECK(h.all == expect.lengths);
        CHECK(h.simple == expect.simple_lengths);
        CHECK(pair_statistic(orbits, 1, 1) == expect.E_KL);
        const auto surface = build_boundary_surface(g, orbits);
        const auto inv = boundary_invariants(surface);
        auto genera = inv.genera;
        std::sort(genera.begin(), genera.end());
        CHECK(genera == expect.genera);
        CHECK(surface.vertex_count == expect.boundary_vertices);
        CHECK(inv.component_count == expect.boundary_components);
        CHECK(surface.euler_characteristic() == 2 * h.total - 2);
        const auto spectrum = cusp_spectrum(orbits);
        std::vector<std::int64_t> lengths;
        for (auto [k, c] : expect.lengths)
            for (std::int64_t i = 0; i < c; ++i) lengths.push_back(k);
        std::sort(lengths.rbegin(), lengths.rend());
        CHECK(spectrum.lengths == lengths);
        CHECK_FALSE(genericity_check(g, orbits, 1).dual_simple);
    }
}

TEST_CASE("length-1 orbits come from folded faces") {
    for (const auto& g : enumerate_all(2)) {
        const auto h = edge_histogram(build_edge_orbits(g));
        CHECK((h.count(1) > 0) == has_folded_edge(g));
    }
}

TEST_CASE("orbit traversal") {
    const auto g = sample_uniform(40, Seed{5});
    const auto orbits = build_edge_orbits(g);
    std::vector<int> seen(6 * 40, 0);
    for (const auto& o : orbits.orbits) {
        CHECK(o.length() >= 1);
        std::set<std::int64_t> tets;
        for (const auto& w : o.wedges) {
            ++seen[static_cast<std::size_t>(w.index())];
            tets.insert(w.tet);
            CHECK(orbits.orbit_of_wedge[static_cast<std::size_t>(w.index())] == o.id);
        }
        CHECK(o.simple == (tets.size() == o.wedges.size()));
    }
    for (int s : seen) CHECK(s == 1);
}

TEST_CASE("histogram identities on samples") {
    for (std::int64_t n : {3, 10, 50, 400}) {
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            const auto g = sample_uniform(n, Seed{seed});
            const auto orbits = build_edge_orbits(g);
            const auto h = edge_histogram(orbits);
            CHECK(weighted_sum(h) == 6 * n);
            for (auto [k, c] : h.simple) {
                CHECK(c <= h.count(k));
                CHECK(k <= n);
            }
            const auto surface = build_boundary_surface(g, orbits);
            CHECK(surface.vertex_count == 2 * h.total);
            CHECK(surface.edge_count() == 6 * n);
            CHECK(surface.face_count() == 4 * n);
            CHECK(surface.euler_characteristic() == 2 * h.total - 2 * n);
            const auto vertices = vertex_orbits(g);
            CHECK(vertices.count <= 4 * n);
            CHECK(components_match_vertex_orbits(surface, vertices));
            const auto inv = boundary_invariants(surface);
            CHECK(inv.component_count == vertices.count);
            for (auto chi : inv.euler_characteristics) CHECK(chi % 2 == 0);
            if (inv.component_count == 1) CHECK(inv.total_genus() == n + 1 - h.total);
            const auto spectrum = cusp_spectrum(orbits);
            CHECK(std::accumulate(spectrum.lengths.begin(), spectrum.lengths.end(), std::int64_t{0}) == 6 * n);
            CHECK(std::is_sorted(spectrum.lengths.rbegin(), spectrum.lengths.rend()));
            const auto summary = summarize(g);
            CHECK(summary.V == vertices.count);
            CHECK(summary.boundary_euler_characteristic == 2 * h.total - 2 * n);
        }
    }
}

TEST_CASE("pair statistic") {
    const auto g = sample_uniform(200, Seed{8});
    const auto orbits = build_edge_orbits(g);
    const auto h = edge_histogram(orbits);
    if (h.count(1) == 0) CHECK(pair_statistic(orbits, 1, 1) == 0);
    // Large bounds count every pair of orbits sharing a tetrahedron.
    std::int64_t brute = 0;
    for (std::size_t a = 0; a < orbits.orbits.size(); ++a)
        for (std::size_t b = a + 1; b < orbits.orbits.size(); ++b) {
            std::set<std::int64_t> ta;
            for (const auto& w : orbits.orbits[a].wedges) ta.insert(w.tet);
            bool meet = false;
            for (const auto& w : orbits.orbits[b].wedges) meet = meet || ta.count(w.tet) > 0;
            brute += meet;
        }
    CHECK(pair_statistic(orbits, 6 * 200, 6 * 200) == brute);
    CHECK_THROWS_AS(pair_statistic(orbits, 0, 1), Error);
}

TEST_CASE("genericity predicates") {
    CHECK(default_cutoff(1) == 1);
    CHECK(default_cutoff(16) == 2);
    CHECK(default_cutoff(17) == 3);
    CHECK(default_cutoff(10000) == 10);
    // A non-simple orbit of small length fails the short-edge predicate.
    for (const auto& g : enumerate_all(2)) {
        const auto orbits = build_edge_orbits(g);
        bool short_nonsimple = false;
        for (const auto& o : orbits.orbits) short_nonsimple = short_nonsimple || (!o.simple && o.length() <= 3);
        if (short_nonsimple) CHECK_FALSE(genericity_check(g, orbits, 3).all_short_edges_simple);
    }
}
