#include <map>
#include <set>
#include <sstream>

#include "doctest.h"

#include "brute_force.hpp"
#include "rtm/complex.hpp"
#include "rtm/core_model.hpp"
#include "rtm/dual_graph.hpp"

using namespace rtm;

namespace {

void check_matching(const GluingInstance& g) {
    std::vector<int> seen(static_cast<std::size_t>(4 * g.n()), 0);
    REQUIRE(g.pairs().size() == static_cast<std::size_t>(2 * g.n()));
    for (const auto& p : g.pairs()) {
        CHECK(p.first < p.second);
        ++seen[static_cast<std::size_t>(p.first.index())];
        ++seen[static_cast<std::size_t>(p.second.index())];
    }
    for (int s : seen) CHECK(s == 1);
}

} // namespace

TEST_CASE("face cycles are outward oriented") {
    // Every directed tetrahedron edge occurs in exactly one face cycle.
    std::set<std::pair<int, int>> directed;
    for (int f = 0; f < 4; ++f)
        for (int j = 0; j < 3; ++j) directed.insert({kFaceCycle[f][j], kFaceCycle[f][(j + 1) % 3]});
    CHECK(directed.size() == 12);
    for (int f = 0; f < 4; ++f) CHECK(cycle_position(f, f) == -1);
}

TEST_CASE("edge slots are lexicographic") {
    for (int s = 0; s < 6; ++s) {
        CHECK(edge_slot(kEdgeSlot[s][0], kEdgeSlot[s][1]) == s);
        CHECK(edge_slot(kEdgeSlot[s][1], kEdgeSlot[s][0]) == s);
    }
}

TEST_CASE("rotation rejects values outside 0..2") {
    CHECK_THROWS_AS(Rotation(3), Error);
    CHECK_THROWS_AS(Rotation(-1), Error);
    CHECK(Rotation(2).value() == 2);
}

TEST_CASE("instance validation") {
    CHECK_THROWS_AS(GluingInstance(1, {{{0, 0}, {0, 1}, Rotation(0)}}), Error);
    CHECK_THROWS_AS(GluingInstance(1, {{{0, 0}, {0, 1}, Rotation(0)}, {{0, 1}, {0, 2}, Rotation(0)}}), Error);
    // Pairs given out of order are canonicalized.
    GluingInstance g(1, {{{0, 3}, {0, 1}, Rotation(1)}, {{0, 2}, {0, 0}, Rotation(2)}});
    CHECK(g.pairs()[0].first == FaceId{0, 0});
    CHECK(g.pairs()[0].second == FaceId{0, 2});
    CHECK(g.pairs()[1].first == FaceId{0, 1});
    CHECK(g.partner({0, 3}) == FaceId{0, 1});
    CHECK(g.rotation({0, 1}).value() == 1);
    CHECK_THROWS_AS(g.partner({1, 0}), Error);
}

TEST_CASE("sample_uniform is deterministic and a perfect matching") {
    for (std::int64_t n : {1, 2, 7, 100}) {
        const auto a = sample_uniform(n, Seed{42});
        const auto b = sample_uniform(n, Seed{42});
        CHECK(a == b);
        check_matching(a);
    }
    CHECK_FALSE(sample_uniform(100, Seed{1}) == sample_uniform(100, Seed{2}));
    CHECK_THROWS_AS(sample_uniform(0, Seed{1}), Error);
}

TEST_CASE("instance counts") {
    CHECK(instance_count(1) == 27);
    CHECK(instance_count(2) == 8505);
    CHECK(enumerate_all(1).size() == 27);
    const auto all2 = enumerate_all(2);
    CHECK(all2.size() == 8505);
    std::set<std::string> distinct;
    for (const auto& g : all2) {
        check_matching(g);
        distinct.insert(to_text(g));
    }
    CHECK(distinct.size() == 8505);
    CHECK_THROWS_AS(enumerate_all(3), Error);
}

TEST_CASE("n=1 support of sample_uniform has 27 instances") {
    std::set<std::string> seen;
    for (std::uint64_t s = 0; s < 3000; ++s) seen.insert(to_text(sample_uniform(1, Seed{s})));
    CHECK(seen.size() == 27);
}

TEST_CASE("face maps") {
    const auto g = sample_uniform(5, Seed{9});
    for (std::int64_t i = 0; i < 20; ++i) {
        const auto f = FaceId::from_index(i);
        const auto there = face_map(g, f);
        const auto back = face_map(g, g.partner(f));
        std::map<std::int64_t, std::int64_t> forward, inverse;
        for (auto [a, b] : there) forward[a] = b;
        for (auto [a, b] : back) inverse[a] = b;
        for (auto [a, b] : forward) CHECK(inverse.at(b) == a);
        // Vertex opposite the face is never mapped.
        for (auto [a, b] : there) {
            CHECK(a != vertex_label(f.tet, f.face));
            CHECK(b / 4 == g.partner(f).tet);
        }
    }
    CHECK_THROWS_AS(face_map(g, FaceId{5, 0}), Error);
}

TEST_CASE("distinct rotations disagree on every vertex") {
    for (int r = 0; r < 3; ++r)
        for (int r2 = 0; r2 < 3; ++r2) {
            if (r == r2) continue;
            GluingInstance a(1, {{{0, 0}, {0, 1}, Rotation(r)}, {{0, 2}, {0, 3}, Rotation(0)}});
            GluingInstance b(1, {{{0, 0}, {0, 1}, Rotation(r2)}, {{0, 2}, {0, 3}, Rotation(0)}});
            const auto ma = face_map(a, {0, 0});
            const auto mb = face_map(b, {0, 0});
            for (int j = 0; j < 3; ++j) {
                CHECK(ma[j].first == mb[j].first);
                CHECK(ma[j].second != mb[j].second);
            }
        }
}

TEST_CASE("n=1 vertex orbits match the oracle") {
    for (const auto& g : enumerate_all(1)) {
        const auto stats = oracle::brute_force(g, 1);
        CHECK(vertex_orbits(g).count == stats.V);
    }
}

TEST_CASE("sample_simple") {
    SUBCASE("n=5 gives K5") {
        const auto s = sample_simple(5, Seed{3});
        const auto dual = build_dual(s.instance);
        CHECK(is_simple(dual));
        std::set<std::pair<std::int64_t, std::int64_t>> edges(dual.edges().begin(), dual.edges().end());
        CHECK(edges.size() == 10);
        CHECK(s.attempts >= 1);
    }
    SUBCASE("outputs have simple duals") {
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            const auto s = sample_simple(60, Seed{seed});
            CHECK(is_simple(build_dual(s.instance)));
            CHECK(s.instance == sample_simple(60, Seed{seed}).instance);
        }
    }
    SUBCASE("small n") {
        for (std::int64_t n : {1, 2, 3, 4}) {
            try {
                sample_simple(n, Seed{1});
                FAIL("expected invalid-n");
            } catch (const Error& e) {
                CHECK(e.code() == ErrorCode::InvalidN);
            }
        }
        // With the size check relaxed, n = 1 and 2 exhaust the retry budget.
        for (std::int64_t n : {1, 2}) {
            try {
                sample_simple(n, Seed{1}, 50, false);
                FAIL("expected retry-limit-exceeded");
            } catch (const Error& e) {
                CHECK(e.code() == ErrorCode::RetryLimitExceeded);
            }
        }
    }
    SUBCASE("acceptance rate at n=100 is bounded away from zero") {
        int accepted = 0;
        for (std::uint64_t seed = 0; seed < 2000; ++seed) {
            try {
                if (sample_simple(100, Seed{seed}, 1).attempts == 1) ++accepted;
            } catch (const Error&) {
            }
        }
        // exp(-15/4) ~ 0.0235 for large n.
        CHECK(accepted > 20);
        CHECK(accepted < 120);
    }
}

TEST_CASE("text round trip") {
    const auto g = sample_uniform(30, Seed{11});
    std::stringstream ss;
    write_instance(ss, g);
    const auto back = read_instance(ss);
    CHECK(back == g);
    CHECK(to_text(back) == to_text(g));
    CHECK(from_text(to_text(g)) == g);
    CHECK_THROWS_AS(from_text("1\n0 0 0 1 0\n"), Error);
    CHECK_THROWS_AS(from_text("garbage"), Error);
}
