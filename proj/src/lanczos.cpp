#include "rtm/lanczos.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "rtm/error.hpp"
#include "rtm/rng.hpp"

namespace rtm {

LanczosResult largest_eigenvalue_orthogonal(const std::function<void(const Eigen::VectorXd&, Eigen::VectorXd&)>& apply,
                                            const Eigen::VectorXd& deflate, const LanczosOptions& options) {
    const Eigen::Index n = deflate.size();
    if (n < 2) throw Error(ErrorCode::InvalidArgument, "operator has no orthogonal complement to search");
    if (options.tolerance <= 0 || options.max_iterations < 1 || options.max_basis < 2)
        throw Error(ErrorCode::InvalidArgument, "invalid Lanczos options");
    const Eigen::Index m = std::min<Eigen::Index>(options.max_basis, n - 1);

    auto project = [&](Eigen::VectorXd& v) { v -= deflate.dot(v) * deflate; };

    Rng rng(options.seed);
    Eigen::VectorXd x(n);
    for (Eigen::Index i = 0; i < n; ++i) x[i] = rng.uniform() - 0.5;
    project(x);
    x.normalize();

    LanczosResult result;
    Eigen::MatrixXd V(n, m + 1);
    Eigen::VectorXd alpha(m);
    Eigen::VectorXd beta(m);
    Eigen::VectorXd w(n);
    while (true) {
        V.col(0) = x;
        for (Eigen::Index j = 0; j < m; ++j) {
            apply(V.col(j), w);
            ++result.iterations;
            alpha[j] = V.col(j).dot(w);
            // Two passes of classical Gram-Schmidt against the whole basis.
            for (int pass = 0; pass < 2; ++pass) {
                w -= V.leftCols(j + 1) * (V.leftCols(j + 1).transpose() * w);
                project(w);
            }
            beta[j] = w.norm();

            const bool exhausted = beta[j] < 1e-13;
            const bool check = exhausted || j + 1 == m || (j + 1) % 8 == 0;
            if (check) {
                Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tri;
                tri.computeFromTridiagonal(alpha.head(j + 1), beta.head(j), Eigen::ComputeEigenvectors);
                const Eigen::Index top = j;  // eigenvalues ascend
                const Eigen::VectorXd s = tri.eigenvectors().col(top);
                result.eigenvalue = tri.eigenvalues()[top];
                result.residual = exhausted ? 0.0 : beta[j] * std::abs(s[j]);
                if (result.residual <= options.tolerance) return result;
                if (j + 1 == m) {
                    x = V.leftCols(j + 1) * s;
                    project(x);
                    x.normalize();
                }
            }
            if (result.iterations >= options.max_iterations)
                throw Error(ErrorCode::NoConvergence, "Lanczos did not converge within " +
                                                          std::to_string(options.max_iterations) + " iterations");
            if (j + 1 < m) V.col(j + 1) = w / beta[j];
        }
    }
}

} // namespace rtm
