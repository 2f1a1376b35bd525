#pragma once

#include <cstdint>
#include <functional>

#include <Eigen/Core>

namespace rtm {

struct LanczosOptions {
    double tolerance = 1e-8;             // on the Ritz residual norm
    std::int64_t max_iterations = 100000;  // total operator applications
    std::int64_t max_basis = 300;        // Krylov dimension before restarting
    std::uint64_t seed = 0x5eed;         // start vector
};

struct LanczosResult {
    double eigenvalue = 0.0;
    double residual = 0.0;
    std::int64_t iterations = 0;
};

// Largest eigenvalue of the symmetric operator `apply` (y = A x) restricted
// to the orthogonal complement of the unit vector `deflate`. Lanczos with full
// reorthogonalization and explicit restarts; throws NoConvergence when the
// iteration cap is reached.
LanczosResult largest_eigenvalue_orthogonal(const std::function<void(const Eigen::VectorXd&, Eigen::VectorXd&)>& apply,
                                            const Eigen::VectorXd& deflate, const LanczosOptions& options = {});

} // namespace rtm
