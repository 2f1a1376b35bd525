#pragma once

#include <cstdint>

namespace rtm {

struct SeriesValue {
    double value = 0.0;
    double error_bound = 0.0;  // bound on the truncation error
    std::int64_t terms = 0;
};

// Lobachevsky function L(t) = -int_0^t log|2 sin s| ds via its sine series
// 1/2 sum_m sin(2mt)/m^2, truncated where the summation-by-parts tail bound
// drops below `abs_error`. Odd and pi-periodic; exactly 0 at multiples of pi.
SeriesValue lobachevsky_series(double theta, double abs_error = 1e-12);

// Power series t - t log|2t| + sum_k t zeta(2k) (t/pi)^(2k) / (k(2k+1)), valid
// for |t| < pi and fast for small |t|.
double lobachevsky_expansion(double theta);

double lobachevsky(double theta);

// Volume of the regular ideal octahedron, 8 L(pi/4).
double octahedron_volume();

// Combinatorial volume proxy n * v_O for the n-tetrahedron complex.
double volume_proxy(std::int64_t n);

} // namespace rtm
