#include "avebounds/perturbation.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>

#include "avebounds/errors.hpp"

namespace avb {

namespace {

std::string fmt(double v)
{
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

bool dominated(const Matrix& d, const Matrix& m, double eps)
{
    const Matrix lim = eps * m.cwiseAbs();
    const Matrix slack = lim.cwiseAbs() * 1e-12 + Matrix::Constant(m.rows(), m.cols(), 1e-300);
    return (d.cwiseAbs().array() <= (lim + slack).array()).all();
}

double relative_rhs(const AveProblem& problem, const Vector& db, Norm p)
{
    const double nb = norm(problem.b(), p);
    if (!(nb > 0.0)) throw InvalidInput("relative perturbation bound undefined for b = 0");
    return norm(db, p) / nb;
}

void record(PerturbBoundReport& r, const UpperFactor& f)
{
    const double v = f.value * r.w;
    switch (f.method) {
    case UpperMethod::Neumann: r.tau = v; break;
    case UpperMethod::SingularGap: r.upsilon = v; break;
    case UpperMethod::NormRatio: r.nu = v; break;
    }
}

} // namespace

Perturbation zero_perturbation(Eigen::Index n)
{
    return {Matrix::Zero(n, n), Matrix::Zero(n, n), Vector::Zero(n), 0.0};
}

void check_dimensions(const AveProblem& problem, const Perturbation& pert)
{
    const Eigen::Index n = problem.size();
    if (pert.dA.rows() != n || pert.dA.cols() != n || pert.dB.rows() != n ||
        pert.dB.cols() != n || pert.db.size() != n)
        throw InvalidInput("perturbation dimensions do not match the problem");
    require_finite(pert.dA, "dA");
    require_finite(pert.dB, "dB");
    require_finite(pert.db, "db");
    if (pert.epsilon && !(*pert.epsilon >= 0.0 && std::isfinite(*pert.epsilon)))
        throw InvalidInput("epsilon must be finite and nonnegative");
}

bool componentwise_admissible(const AveProblem& problem, const Perturbation& pert)
{
    check_dimensions(problem, pert);
    if (!pert.epsilon) return false;
    const double e = *pert.epsilon;
    return dominated(pert.dA, problem.A(), e) && dominated(pert.dB, problem.B(), e) &&
           dominated(Matrix(pert.db), Matrix(problem.b()), e);
}

AveProblem perturbed(const AveProblem& problem, const Perturbation& pert)
{
    check_dimensions(problem, pert);
    return AveProblem(problem.A() + pert.dA, problem.B() + pert.dB, problem.b() + pert.db,
                      problem.form());
}

double perturbation_weight(const AveProblem& problem, const Perturbation& pert, Norm p)
{
    check_dimensions(problem, pert);
    return relative_rhs(problem, pert.db, p) * (norm(problem.A(), p) + norm(problem.B(), p)) +
           norm(pert.dA, p) + norm(pert.dB, p);
}

double rhs_only_bound(const AveProblem& problem, const Vector& db, UpperMethod method, Norm p)
{
    if (db.size() != problem.size()) throw InvalidInput("db has the wrong length");
    const double rel = relative_rhs(problem, db, p);
    return upper_factor(problem, method, p) * rel * (norm(problem.A(), p) + norm(problem.B(), p));
}

double relative_bound(const AveProblem& problem, const Perturbation& pert, UpperMethod method,
                      Norm p)
{
    const double w = perturbation_weight(problem, pert, p);
    return upper_factor(perturbed(problem, pert), method, p) * w;
}

std::optional<double> PerturbBoundReport::min_bound() const
{
    std::optional<double> best;
    for (const auto& v : {tau, upsilon, nu, delta})
        if (v && (!best || *v < *best)) best = v;
    return best;
}

namespace {

// Every applicable field; the bool reports whether any normwise estimator applied.
std::pair<PerturbBoundReport, bool> fill_report(const AveProblem& problem,
                                                const Perturbation& pert, Norm p,
                                                const Vector* x_star)
{
    PerturbBoundReport r;
    r.w = perturbation_weight(problem, pert, p);
    const AveProblem pp = perturbed(problem, pert);

    bool any = false;
    for (UpperMethod m : kUpperMethods) {
        UpperFactor f = try_upper_factor(pp, m, p);
        if (f.applicable) {
            record(r, f);
            any = true;
        } else {
            r.notes.push_back(to_string(m) + ": " + f.reason);
        }
        r.mu1_estimates.push_back(std::move(f));
    }

    if (x_star && pert.epsilon) {
        if (!componentwise_admissible(problem, pert))
            r.notes.push_back("componentwise hypothesis |dA| <= e|A|, |dB| <= e|B|, |db| <= e|b| "
                              "does not hold");
        try {
            r.delta = componentwise_bound(problem, *x_star, *pert.epsilon, p);
        } catch (const Inapplicable& e) {
            r.notes.push_back("delta: " + e.condition());
        }
    }

    return {std::move(r), any};
}

} // namespace

PerturbBoundReport general_relative_bound(const AveProblem& problem, const Perturbation& pert,
                                          Norm p, const Vector* x_star)
{
    auto [r, any] = fill_report(problem, pert, p, x_star);
    if (!any)
        throw Inapplicable("no upper-factor estimator applies to the perturbed pair");
    return r;
}

double componentwise_bound(const AveProblem& problem, const Vector& x_star, double epsilon,
                           Norm p)
{
    const Eigen::Index n = problem.size();
    if (x_star.size() != n) throw InvalidInput("x* has the wrong length");
    if (!(epsilon >= 0.0 && std::isfinite(epsilon)))
        throw InvalidInput("epsilon must be finite and nonnegative");
    const double nx = norm(x_star, p);
    if (!(nx > 0.0)) throw InvalidInput("relative componentwise bound undefined for x* = 0");
    if (epsilon == 0.0) return 0.0;

    const bool type1 = problem.form() == Form::TypeI;
    Matrix Ainv;
    if (!try_inverse(problem.A(), Ainv)) throw Inapplicable("A nonsingular");
    const Matrix R = (type1 ? Matrix(Ainv * problem.B()) : Matrix(problem.B() * Ainv)).cwiseAbs();
    const std::string cond = type1 ? "rho(|A^-1 B|) < 1" : "rho(|B A^-1|) < 1";
    const double rho = spectral_radius_nonneg(R);
    if (!(rho < 1.0)) throw Inapplicable(cond + " (got " + fmt(rho) + ")");
    Matrix series;
    if (!try_inverse(Matrix(Matrix::Identity(n, n) - R), series)) throw Inapplicable(cond);

    const Matrix K = type1 ? Matrix(series * Ainv.cwiseAbs()) : Matrix(Ainv.cwiseAbs() * series);
    const Matrix C = problem.A().cwiseAbs() + problem.B().cwiseAbs();
    const double g = epsilon * norm(Matrix(K * C), p);
    if (!(g < 1.0))
        throw Inapplicable("e ||K(|A|+|B|)|| < 1 (got " + fmt(g) + ")");

    const Vector v = problem.b().cwiseAbs() + C * x_star.cwiseAbs();
    return epsilon * norm(Vector(K * v), p) / ((1.0 - g) * nx);
}

ClassicalBounds classical_linear_bounds(const Matrix& A, const Matrix& dA, const Vector& b,
                                        const Vector& db, const Vector& x_star, double epsilon,
                                        Norm p)
{
    require_square(A, "A");
    const Eigen::Index n = A.rows();
    if (dA.rows() != n || dA.cols() != n || b.size() != n || db.size() != n ||
        x_star.size() != n)
        throw InvalidInput("classical_linear_bounds: dimension mismatch");
    if (!(epsilon >= 0.0 && std::isfinite(epsilon)))
        throw InvalidInput("epsilon must be finite and nonnegative");

    ClassicalBounds out;
    Matrix Ainv;
    if (!try_inverse(A, Ainv)) {
        out.normwise_reason = out.componentwise_reason = "A nonsingular";
        return out;
    }

    const double nA = norm(A, p);
    const double nAinv = norm(Ainv, p);
    const double nb = norm(b, p);
    const double ndA = norm(dA, p);
    if (!(nb > 0.0)) {
        out.normwise_reason = "b != 0";
    } else if (!(nAinv * ndA < 1.0)) {
        out.normwise_reason = "||A^-1|| ||dA|| < 1 (got " + fmt(nAinv * ndA) + ")";
    } else {
        const double kappa = nA * nAinv;
        out.normwise = kappa / (1.0 - kappa * ndA / nA) * (norm(db, p) / nb + ndA / nA);
    }

    const double nx = norm(x_star, p);
    const Matrix absinv = Ainv.cwiseAbs();
    const double g = epsilon * norm(Matrix(absinv * A.cwiseAbs()), p);
    if (!(nx > 0.0)) {
        out.componentwise_reason = "x* != 0";
    } else if (!(g < 1.0)) {
        out.componentwise_reason = "e || |A^-1||A| || < 1 (got " + fmt(g) + ")";
    } else {
        const Vector v = b.cwiseAbs() + A.cwiseAbs() * x_star.cwiseAbs();
        out.componentwise = epsilon * norm(Vector(absinv * v), p) / ((1.0 - g) * nx);
    }
    return out;
}

ExperimentRecord perturbation_experiment(const AveProblem& problem, const Perturbation& pert,
                                         const SolveOptions& opts, Norm p)
{
    const AveProblem pp = perturbed(problem, pert);
    const SolveResult sx = picard_solve(problem, opts);
    if (!sx.converged)
        throw NonConvergence("original problem did not converge in " +
                             std::to_string(sx.iterations) + " iterations");
    const SolveResult sy = picard_solve(pp, opts);
    if (!sy.converged)
        throw NonConvergence("perturbed problem did not converge in " +
                             std::to_string(sy.iterations) + " iterations");

    ExperimentRecord rec;
    rec.n = problem.size();
    rec.epsilon = pert.epsilon.value_or(0.0);
    rec.iterations_original = sx.iterations;
    rec.iterations_perturbed = sy.iterations;
    const double nx = norm(sx.x, p);
    rec.r = nx > 0.0 ? norm(Vector(sx.x - sy.x), p) / nx : norm(sy.x, p);
    rec.componentwise_hypothesis = componentwise_admissible(problem, pert);

    const auto [rep, any] = fill_report(problem, pert, p, &sx.x);
    rec.w = rep.w;
    rec.tau = rep.tau;
    rec.upsilon = rep.upsilon;
    rec.nu = rep.nu;
    rec.delta = rep.delta;
    rec.notes = rep.notes;
    if (!any) rec.notes.push_back("no upper-factor estimator applies to the perturbed pair");
    return rec;
}

} // namespace avb
