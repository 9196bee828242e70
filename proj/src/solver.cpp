#include "avebounds/solver.hpp"

#include <cmath>

#include "avebounds/errors.hpp"

namespace avb {

SolveResult picard_solve(const AveProblem& problem, const SolveOptions& opts)
{
    if (!(opts.tolerance > 0.0))
        throw InvalidInput("picard_solve: tolerance must be positive");

    const Eigen::PartialPivLU<Matrix> lu(problem.A());
    if (!(lu.rcond() >= kSingularRcond))
        throw SingularMatrix("picard_solve: A is numerically singular");

    const Eigen::Index n = problem.size();
    Vector x = opts.initial.value_or(Vector::Zero(n));
    if (x.size() != n) throw InvalidInput("picard_solve: initial vector has the wrong length");

    const bool type1 = problem.form() == Form::TypeI;
    SolveResult result;
    Vector next(n);
    for (std::size_t k = 0; k < opts.max_iterations; ++k) {
        if (type1)
            next = lu.solve(problem.B() * x.cwiseAbs() + problem.b());
        else
            next = lu.solve((problem.B() * x).cwiseAbs() + problem.b());

        const double step = (next - x).norm();
        x.swap(next);
        result.iterations = k + 1;
        result.final_step_norm = step;
        if (step < opts.tolerance) {
            result.converged = true;
            break;
        }
        if (!std::isfinite(step)) break;
    }

    result.final_residual_norm = residual(problem, x).norm();
    result.x = std::move(x);
    return result;
}

} // namespace avb
