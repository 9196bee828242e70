#ifndef AVEBOUNDS_SOLVER_HPP
#define AVEBOUNDS_SOLVER_HPP

#include <cstddef>
#include <optional>

#include "avebounds/ave.hpp"

namespace avb {

struct SolveOptions {
    std::optional<Vector> initial;   ///< zero vector when empty
    double tolerance = 1e-6;         ///< on ||x_{k+1} - x_k||_2
    std::size_t max_iterations = 10000;
};

struct SolveResult {
    Vector x;
    std::size_t iterations = 0;
    double final_step_norm = 0.0;
    double final_residual_norm = 0.0;   ///< ||r(x)||_2 at the returned iterate
    bool converged = false;
};

/// Picard iteration x <- A^{-1}(B|x| + b) (TypeI) or A^{-1}(|Bx| + b)
/// (TypeII), stopping once the step 2-norm drops below the tolerance.
/// A is factored once. Throws SingularMatrix for singular A and InvalidInput
/// for a non-positive tolerance; hitting the iteration cap is reported via
/// `converged == false`.
SolveResult picard_solve(const AveProblem& problem, const SolveOptions& opts = {});

} // namespace avb

#endif // AVEBOUNDS_SOLVER_HPP
