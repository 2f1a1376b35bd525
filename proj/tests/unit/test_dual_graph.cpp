#include <cmath>

#include <Eigen/Dense>

#include "doctest.h"

#include "rtm/core_model.hpp"
#include "rtm/dual_graph.hpp"

using namespace rtm;

namespace {

MultiGraph complete_graph(std::int64_t k) {
    std::vector<std::pair<std::int64_t, std::int64_t>> edges;
    for (std::int64_t i = 0; i < k; ++i)
        for (std::int64_t j = i + 1; j < k; ++j) edges.push_back({i, j});
    return MultiGraph(k, edges);
}

// Independent dense computation from the edge list.
double dense_lambda1(const MultiGraph& g) {
    const auto n = g.vertex_count();
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
    for (auto [i, j] : g.edges()) {
        if (i == j) {
            a(i, i) += 2;
        } else {
            a(i, j) += 1;
            a(j, i) += 1;
        }
    }
    Eigen::VectorXd d = a.rowwise().sum();
    Eigen::MatrixXd l = Eigen::MatrixXd::Identity(n, n);
    for (std::int64_t i = 0; i < n; ++i)
        for (std::int64_t j = 0; j < n; ++j) l(i, j) -= a(i, j) / std::sqrt(d(i) * d(j));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(l, Eigen::EigenvaluesOnly);
    return es.eigenvalues()(1);
}

} // namespace

TEST_CASE("dual of n=1 is one vertex with two loops") {
    for (const auto& g : enumerate_all(1)) {
        const auto d = build_dual(g);
        CHECK(d.vertex_count() == 1);
        CHECK(d.edge_count() == 2);
        CHECK(d.regular_degree() == 4);
        CHECK_FALSE(is_simple(d));
        CHECK(is_connected(d));
        CHECK(diameter(d).diameter == 0);
    }
}

TEST_CASE("duals are 4-regular with 2n edges") {
    for (std::int64_t n : {2, 9, 300}) {
        const auto d = build_dual(sample_uniform(n, Seed{static_cast<std::uint64_t>(n)}));
        CHECK(d.edge_count() == 2 * n);
        CHECK(d.regular_degree() == 4);
    }
}

TEST_CASE("simplicity") {
    CHECK(is_simple(complete_graph(5)));
    CHECK_FALSE(is_simple(MultiGraph(2, {{0, 1}, {0, 1}})));
    CHECK_FALSE(is_simple(MultiGraph(2, {{0, 0}, {0, 1}})));
}

TEST_CASE("diameter") {
    // Path on 6 vertices plus a pendant: eccentricity of an end is 5.
    const MultiGraph path(7, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {2, 6}});
    auto r = diameter(path);
    CHECK(r.connected);
    CHECK(r.diameter == 5);
    r = diameter(MultiGraph(4, {{0, 1}, {2, 3}}));
    CHECK_FALSE(r.connected);
    CHECK(r.diameter == -1);
    CHECK(diameter(complete_graph(5)).diameter == 1);
    // A long cycle exercises more than one batch of sources.
    std::vector<std::pair<std::int64_t, std::int64_t>> cycle;
    for (std::int64_t i = 0; i < 601; ++i) cycle.push_back({i, (i + 1) % 601});
    CHECK(diameter(MultiGraph(601, cycle)).diameter == 300);
}

TEST_CASE("diameter lower bound on random duals") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const std::int64_t n = 3000;
        const auto d = build_dual(sample_uniform(n, Seed{seed}));
        const auto r = diameter(d);
        if (r.connected)
            CHECK(r.diameter >= static_cast<std::int64_t>(std::floor(std::log(n) / std::log(4.0))) - 2);
    }
}

TEST_CASE("K5 spectral gap") {
    for (auto method : {SpectralMethod::Dense, SpectralMethod::Lanczos}) {
        SpectralOptions opt;
        opt.method = method;
        CHECK(spectral_gap(complete_graph(5), opt).lambda1 == doctest::Approx(1.25).epsilon(1e-9));
    }
}

TEST_CASE("doubled 4-cycle") {
    const MultiGraph g(4, {{0, 1}, {0, 1}, {1, 2}, {1, 2}, {2, 3}, {2, 3}, {0, 3}, {0, 3}});
    CHECK(g.regular_degree() == 4);
    CHECK(dense_lambda1(g) == doctest::Approx(1.0).epsilon(1e-12));
    for (auto method : {SpectralMethod::Dense, SpectralMethod::Lanczos}) {
        SpectralOptions opt;
        opt.method = method;
        CHECK(spectral_gap(g, opt).lambda1 == doctest::Approx(dense_lambda1(g)).epsilon(1e-9));
    }
}

TEST_CASE("iterative and dense solvers agree") {
    for (std::int64_t n : {20, 150, 700, 2000}) {
        auto d = build_dual(sample_uniform(n, Seed{77}));
        for (std::uint64_t s = 78; !is_connected(d); ++s) d = build_dual(sample_uniform(n, Seed{s}));
        SpectralOptions opt;
        opt.method = SpectralMethod::Lanczos;
        const auto it = spectral_gap(d, opt);
        CHECK(std::abs(it.lambda1 - dense_lambda1(d)) < 1e-6);
        CHECK(it.lambda1 >= 0.0);
        CHECK(it.lambda1 <= 2.0);
        CHECK(it.method == "lanczos");
        opt.method = SpectralMethod::Dense;
        if (n <= 700) CHECK(std::abs(spectral_gap(d, opt).lambda1 - it.lambda1) < 1e-6);
    }
}

TEST_CASE("spectral gap errors") {
    try {
        spectral_gap(MultiGraph(4, {{0, 1}, {2, 3}}));
        FAIL("expected disconnected-graph");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::DisconnectedGraph);
    }
    CHECK_THROWS_AS(spectral_gap(MultiGraph(1, {{0, 0}, {0, 0}})), Error);
}

TEST_CASE("double graph") {
    const auto g = build_dual(sample_simple(40, Seed{4}).instance);
    const auto dg = double_graph(g);
    CHECK(dg.vertex_count() == 80);
    CHECK(dg.edge_count() == 2 * 80 + 4 * 40);
    CHECK(dg.regular_degree() == 8);
    CHECK(is_connected(dg) == is_connected(g));
    const double l = spectral_gap(g).lambda1;
    const double ld = spectral_gap(dg).lambda1;
    CHECK(ld > 0.0);
    CHECK(ld == doctest::Approx(std::min(l / 2, 1.0)).epsilon(1e-9));
    CHECK_FALSE(is_connected(double_graph(MultiGraph(2, {{0, 0}, {0, 0}, {1, 1}, {1, 1}}))));
}
