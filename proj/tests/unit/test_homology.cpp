#include "doctest.h"

#include "brute_force.hpp"
#include "rtm/complex.hpp"
#include "rtm/dual_graph.hpp"
#include "rtm/homology.hpp"

using namespace rtm;

namespace {

struct Built {
    GluingInstance g;
    EdgeOrbits orbits;
    BoundarySurface surface;
};

Built build(const GluingInstance& g) {
    auto orbits = build_edge_orbits(g);
    auto surface = build_boundary_surface(g, orbits);
    return {g, std::move(orbits), std::move(surface)};
}

void check_instance(const GluingInstance& g, bool compare_oracle) {
    const auto b = build(g);
    const std::int64_t n = g.n();
    const std::int64_t E = b.orbits.count();

    const auto rel = build_relative_complex(g, b.orbits);
    const auto abs = build_absolute_complex(g, b.orbits, b.surface);
    const auto dbl = build_double_complex(g, b.orbits, b.surface);
    CHECK_NOTHROW(verify_chain_complex(rel));
    CHECK_NOTHROW(verify_chain_complex(abs));
    CHECK_NOTHROW(verify_chain_complex(dbl));
    CHECK(rel.cells == std::array<std::int64_t, 4>{0, E, 2 * n, n});
    CHECK(abs.cells == std::array<std::int64_t, 4>{2 * E, E + 6 * n, 6 * n, n});
    CHECK(rel.euler_characteristic() == n - E);
    CHECK(abs.euler_characteristic() == E - n);
    CHECK(dbl.euler_characteristic() == 0);

    const auto panel = homology_panel(g, b.orbits, b.surface);
    CHECK(panel.relative.euler_characteristic() == n - E);
    CHECK(panel.absolute.euler_characteristic() == E - n);
    CHECK(panel.doubled.euler_characteristic() == 0);
    CHECK(panel.b1_rel() == E - smith_normal_form(rel.boundary[2]).rank);

    const auto inv = boundary_invariants(b.surface);
    const bool connected = is_connected(build_dual(g));
    if (connected) {
        CHECK(panel.absolute.betti[0] == 1);
        CHECK(panel.doubled.betti[0] == 1);
        CHECK(panel.doubled.betti[3] == 1);
        CHECK(panel.doubled.betti[2] == panel.doubled.betti[1]);
    }
    if (inv.component_count == 1) CHECK(panel.b1_abs() == inv.total_genus() + panel.b1_rel());
    CHECK(panel.heegaard.lower == panel.b1_double());
    CHECK(panel.heegaard.upper == n + 1 + E);
    CHECK(panel.heegaard.lower <= panel.heegaard.upper);

    if (compare_oracle) {
        const auto expect = oracle::brute_force(g, 1);
        CHECK(panel.b1_rel() == expect.b1_rel);
        CHECK(panel.b1_abs() == expect.b1_abs);
        CHECK(panel.absolute.torsion == expect.torsion);
        if (expect.b1_double >= 0) CHECK(panel.b1_double() == expect.b1_double);
    }
}

} // namespace

TEST_CASE("heegaard bounds") {
    const auto h = heegaard_bounds(5, 100, 98);
    CHECK(h.lower == 98);
    CHECK(h.upper == 106);
}

TEST_CASE("n=1 exhaustive") {
    for (const auto& g : enumerate_all(1)) check_instance(g, true);
}

TEST_CASE("n=2 every 17th instance") {
    const auto all = enumerate_all(2);
    for (std::size_t i = 0; i < all.size(); i += 17) check_instance(all[i], true);
}

TEST_CASE("random instances") {
    for (std::int64_t n : {3, 8, 25, 80}) {
        for (std::uint64_t seed = 0; seed < 6; ++seed) check_instance(sample_uniform(n, Seed{seed}), n <= 25);
    }
}

TEST_CASE("broken signs are detected") {
    ChainComplex c;
    c.cells = {1, 1, 1, 0};
    c.boundary[1] = IntegerMatrix::from_dense({{1}});
    c.boundary[2] = IntegerMatrix::from_dense({{1}});
    c.boundary[3] = IntegerMatrix(1, 0);
    try {
        verify_chain_complex(c);
        FAIL("expected orientation-inconsistency");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::OrientationInconsistency);
    }
    c.boundary[2] = IntegerMatrix(1, 1);
    CHECK_NOTHROW(verify_chain_complex(c));
}

TEST_CASE("size cap propagates") {
    const auto g = sample_uniform(200, Seed{1});
    const auto b = build(g);
    CHECK_THROWS_AS(homology_panel(g, b.orbits, b.surface, 50), Error);
}
