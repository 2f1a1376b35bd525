#include "rtm/lobachevsky.hpp"

#include <cmath>
#include <numbers>

#include "rtm/error.hpp"

namespace rtm {

namespace {

// Representative of theta modulo pi in [-pi/2, pi/2).
double reduce(double theta) {
    const double pi = std::numbers::pi;
    return theta - pi * std::floor(theta / pi + 0.5);
}

} // namespace

SeriesValue lobachevsky_series(double theta, double abs_error) {
    if (!(abs_error > 0)) throw Error(ErrorCode::InvalidArgument, "error bound must be positive");
    const double t = reduce(theta);
    SeriesValue out;
    const double s = std::abs(std::sin(t));
    if (s == 0.0) return out;
    // Partial sums of sin(2mt) are bounded by 1/|sin t|, so by summation by
    // parts the tail after M terms is at most 2 / (|sin t| (M+1)^2); halve it
    // for the factor 1/2 in front of the series.
    const double m = std::ceil(std::sqrt(1.0 / (s * abs_error)));
    out.terms = static_cast<std::int64_t>(m);
    out.error_bound = 1.0 / (s * (m + 1) * (m + 1));
    double sum = 0.0;
    for (std::int64_t k = out.terms; k >= 1; --k) {
        const double kd = static_cast<double>(k);
        sum += std::sin(2.0 * kd * t) / (kd * kd);
    }
    out.value = 0.5 * sum;
    return out;
}

double lobachevsky_expansion(double theta) {
    const double pi = std::numbers::pi;
    if (std::abs(theta) >= pi) throw Error(ErrorCode::InvalidArgument, "expansion needs |theta| < pi");
    if (theta == 0.0) return 0.0;
    const double r2 = (theta / pi) * (theta / pi);
    double value = theta - theta * std::log(std::abs(2.0 * theta));
    double power = 1.0;
    for (int k = 1; k <= 200; ++k) {
        power *= r2;
        double zeta = 0.0;
        if (k == 1) {
            zeta = pi * pi / 6.0;
        } else if (k == 2) {
            zeta = pi * pi * pi * pi / 90.0;
        } else {
            for (int j = 2000; j >= 1; --j) zeta += std::pow(static_cast<double>(j), -2.0 * k);
        }
        const double term = theta * zeta * power / (k * (2.0 * k + 1.0));
        value += term;
        if (std::abs(term) < 1e-18) break;
    }
    return value;
}

double lobachevsky(double theta) { return lobachevsky_series(theta).value; }

double octahedron_volume() {
    static const double v = 8.0 * lobachevsky_series(std::numbers::pi / 4.0, 1e-13).value;
    return v;
}

double volume_proxy(std::int64_t n) {
    if (n < 1) throw Error(ErrorCode::InvalidN, "n must be positive");
    return static_cast<double>(n) * octahedron_volume();
}

} // namespace rtm
