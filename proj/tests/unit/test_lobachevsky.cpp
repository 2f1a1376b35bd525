#include <cmath>
#include <numbers>

#include "doctest.h"

#include "rtm/error.hpp"
#include "rtm/lobachevsky.hpp"

using namespace rtm;

namespace {

// -int_0^t log|2 sin s| ds by composite Simpson on [a, t] plus the
// small-argument expansion on [0, a].
double quadrature(double t) {
    const double a = 1e-3;
    const double head = a - a * std::log(2 * a) + a * a * a / 18;
    const int m = 200000;
    const double h = (t - a) / m;
    double s = 0;
    for (int i = 0; i <= m; ++i) {
        const double x = a + i * h;
        const double w = (i == 0 || i == m) ? 1 : (i % 2 ? 4 : 2);
        s += w * std::log(2 * std::sin(x));
    }
    return head - s * h / 3;
}

} // namespace

TEST_CASE("octahedron volume") {
    CHECK(std::abs(octahedron_volume() - 3.663862376708876) < 1e-12);
    const auto s = lobachevsky_series(std::numbers::pi / 4);
    CHECK(s.error_bound <= 1e-12);
    CHECK(std::abs(8 * s.value - 3.663862376708876) < 1e-11);
}

TEST_CASE("volume proxy") {
    CHECK(volume_proxy(1) == octahedron_volume());
    CHECK(volume_proxy(1000) == doctest::Approx(1000 * octahedron_volume()).epsilon(1e-15));
    CHECK(volume_proxy(7) - volume_proxy(6) == doctest::Approx(octahedron_volume()));
    CHECK_THROWS_AS(volume_proxy(0), Error);
}

TEST_CASE("symmetries") {
    const double pi = std::numbers::pi;
    CHECK(lobachevsky(0.0) == 0.0);
    CHECK(std::abs(lobachevsky(pi / 2)) < 1e-14);
    for (double t : {0.1, 0.4, 0.9, 1.3, 2.0, 2.9}) {
        CHECK(lobachevsky(-t) == doctest::Approx(-lobachevsky(t)).epsilon(1e-12));
        CHECK(lobachevsky(t + pi) == doctest::Approx(lobachevsky(t)).epsilon(1e-10));
        // L(2t) = 2 L(t) + 2 L(t + pi/2)
        CHECK(lobachevsky(2 * t) == doctest::Approx(2 * lobachevsky(t) + 2 * lobachevsky(t + pi / 2)).epsilon(1e-10));
    }
}

TEST_CASE("series and expansion agree") {
    for (double t : {0.05, 0.3, 0.7, 1.0, 1.5, 2.2, 3.0}) {
        const auto s = lobachevsky_series(t, 1e-12);
        CHECK(std::abs(s.value - lobachevsky_expansion(t)) < 1e-11);
        CHECK(std::abs(lobachevsky(t) - s.value) < 1e-11);
    }
}

TEST_CASE("matches direct quadrature") {
    for (double t : {0.2, std::numbers::pi / 6, std::numbers::pi / 4, 1.2}) CHECK(std::abs(lobachevsky(t) - quadrature(t)) < 1e-8);
    // Maximum of L, half the Clausen value Cl_2(pi/3).
    CHECK(std::abs(lobachevsky(std::numbers::pi / 6) - 0.5074708032049) < 1e-12);
}
