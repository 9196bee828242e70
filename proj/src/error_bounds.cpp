#include "avebounds/error_bounds.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "avebounds/errors.hpp"

namespace avb {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string fmt(double v)
{
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

void require_two_norm(UpperMethod m, Norm p)
{
    if (p != Norm::Two)
        throw InvalidInput(to_string(m) + " upper factor is defined for the 2-norm only");
}

Matrix checked_inverse(const Matrix& m, const std::string& condition)
{
    Matrix out;
    if (!try_inverse(m, out)) throw Inapplicable(condition);
    return out;
}

// ||M^{-1}||_p, +inf when M is numerically singular
double inverse_norm(const Matrix& m, Norm p)
{
    if (p == Norm::Two) {
        const Singulars s = extreme_singulars(m);
        if (!(s.min > kSingularRcond * s.max)) return kInf;
        return 1.0 / s.min;
    }
    Matrix inv;
    if (!try_inverse(m, inv)) return kInf;
    return norm(inv, p);
}

} // namespace

std::string to_string(UpperMethod m)
{
    switch (m) {
    case UpperMethod::Neumann: return "Neumann";
    case UpperMethod::SingularGap: return "SingularGap";
    case UpperMethod::NormRatio: return "NormRatio";
    }
    return "?";
}

UpperMethod parse_upper_method(std::string_view text)
{
    if (text == "neumann" || text == "Neumann") return UpperMethod::Neumann;
    if (text == "gap" || text == "SingularGap" || text == "singular-gap") return UpperMethod::SingularGap;
    if (text == "ratio" || text == "NormRatio" || text == "norm-ratio") return UpperMethod::NormRatio;
    throw InvalidInput("unknown upper-factor method '" + std::string(text) + "'");
}

double lower_factor(const AveProblem& problem, Norm p)
{
    return std::max(norm(Matrix(problem.A() - problem.B()), p),
                    norm(Matrix(problem.A() + problem.B()), p));
}

double upper_factor(const AveProblem& problem, UpperMethod method, Norm p)
{
    const bool type1 = problem.form() == Form::TypeI;
    const Matrix& A = problem.A();
    const Matrix& B = problem.B();
    const Eigen::Index n = problem.size();

    switch (method) {
    case UpperMethod::Neumann: {
        const Matrix Ainv = checked_inverse(A, "A nonsingular");
        const Matrix R = type1 ? Matrix(Ainv * B) : Matrix(B * Ainv);
        const std::string cond = type1 ? "rho(|A^-1 B|) < 1" : "rho(|B A^-1|) < 1";
        const double rho = spectral_radius_nonneg(R.cwiseAbs());
        if (!(rho < 1.0)) throw Inapplicable(cond + " (got " + fmt(rho) + ")");
        const Matrix series = checked_inverse(Matrix::Identity(n, n) - R.cwiseAbs(), cond);
        return norm(series, p) * norm(Ainv, p);
    }
    case UpperMethod::SingularGap: {
        require_two_norm(method, p);
        const double smin_a = sigma_min(A);
        const double smax_b = sigma_max(B);
        if (!(smin_a > smax_b))
            throw Inapplicable("sigma_min(A) > sigma_max(B) (got " + fmt(smin_a) + " <= " +
                               fmt(smax_b) + ")");
        return 1.0 / (smin_a - smax_b);
    }
    case UpperMethod::NormRatio: {
        require_two_norm(method, p);
        const Matrix Binv = checked_inverse(B, "B nonsingular");
        const Matrix Ainv = checked_inverse(A, "A nonsingular");
        const Matrix R = type1 ? Matrix(Ainv * B) : Matrix(B * Ainv);
        const double t = sigma_max(R);
        if (!(t < 1.0))
            throw Inapplicable(std::string(type1 ? "sigma_max(A^-1 B)" : "sigma_max(B A^-1)") +
                               " < 1 (got " + fmt(t) + ")");
        return t * sigma_max(Binv) / (1.0 - t);
    }
    }
    throw InvalidInput("unknown upper-factor method");
}

UpperFactor try_upper_factor(const AveProblem& problem, UpperMethod method, Norm p)
{
    UpperFactor f{method, 0.0, false, {}};
    try {
        f.value = upper_factor(problem, method, p);
        f.applicable = true;
    } catch (const Inapplicable& e) {
        f.reason = e.condition();
    } catch (const InvalidInput& e) {
        f.reason = e.what();
    }
    return f;
}

ChenBounds chen_bounds(const Matrix& A, Norm p)
{
    require_square(A, "A");
    const double smin = sigma_min(A);
    if (!(smin > 1.0)) throw Inapplicable("sigma_min(A) > 1 (got " + fmt(smin) + ")");
    const Matrix I = Matrix::Identity(A.rows(), A.cols());
    const double lower = norm(Matrix(A + I), p) + norm(Matrix(A - I), p);
    return {lower, lower / (smin * smin - 1.0)};
}

std::optional<UpperFactor> ErrorBoundReport::best_upper() const
{
    std::optional<UpperFactor> best;
    for (const auto& f : upper_factors)
        if (f.applicable && (!best || f.value < best->value)) best = f;
    return best;
}

ErrorBoundReport error_bound_report(const AveProblem& problem, Norm p)
{
    ErrorBoundReport report;
    report.p = p;
    report.lower_factor = lower_factor(problem, p);
    for (UpperMethod m : kUpperMethods) report.upper_factors.push_back(try_upper_factor(problem, m, p));

    if (problem.B().isIdentity(0.0)) {
        try {
            const ChenBounds c = chen_bounds(problem.A(), p);
            report.chen_lower = c.lower;
            report.chen_upper = c.upper;
        } catch (const Inapplicable&) {
        }
    }
    return report;
}

ErrorInterval error_interval(const AveProblem& problem, const Vector& x, Norm p)
{
    const ErrorBoundReport report = error_bound_report(problem, p);
    const auto best = report.best_upper();
    if (!best) throw Inconclusive("error_interval: no upper-factor estimator is applicable");

    ErrorInterval out;
    out.residual_norm = norm(residual(problem, x), p);
    out.lower = out.residual_norm / report.lower_factor;
    out.upper = best->value * out.residual_norm;
    out.upper_method = best->method;
    return out;
}

double brute_force_alpha(const AveProblem& problem, Norm p, std::size_t sample_budget,
                         std::uint64_t seed, kernels::Exec exec)
{
    const Eigen::Index n = problem.size();
    if (n > kMaxBruteForceDim)
        throw InvalidInput("brute_force_alpha: n must be <= " + std::to_string(kMaxBruteForceDim));

    const kernels::DiagonalFn f = [&](const Vector& d) {
        return inverse_norm(problem.switched(d), p);
    };
    auto best = kernels::max_over_vertices(n, -1.0, 1.0, f, exec);
    if (sample_budget > 0) {
        const Matrix pts = kernels::sample_box(n, -1.0, 1.0, sample_budget, seed);
        best = kernels::merge(best, kernels::max_over_points(pts, f, exec));
    }
    return best.value;
}

double max_vertex_switched_norm(const AveProblem& problem, Norm p, kernels::Exec exec)
{
    const kernels::DiagonalFn f = [&](const Vector& d) { return norm(problem.switched(d), p); };
    return kernels::max_over_vertices(problem.size(), -1.0, 1.0, f, exec).value;
}

Prop21Slack prop21_slack(const Matrix& A, double alpha, Norm p)
{
    require_square(A, "A");
    if (!(alpha > 0.0)) throw InvalidInput("prop21_slack: alpha must be positive");
    const Matrix I = Matrix::Identity(A.rows(), A.cols());
    const double sum = norm(Matrix(alpha * I + A), p) + norm(Matrix(alpha * I - A), p);
    const double nA = norm(A, p);

    Prop21Slack s{sum - (2.0 * alpha - nA), std::nullopt};
    if (nA <= alpha) s.slack2 = sum - (alpha + nA);
    return s;
}

bool ChenComparison::lower_part_holds(double tol) const
{
    return max_vertex_norm <= chen_lower + tol;
}

bool ChenComparison::upper_part_holds(double tol) const
{
    if (!alpha_estimate || !chen_upper) return true;
    return *alpha_estimate <= *chen_upper + tol;
}

ChenComparison chen_comparison(const Matrix& A, std::size_t sample_budget, std::uint64_t seed)
{
    require_square(A, "A");
    const Eigen::Index n = A.rows();
    const AveProblem unit(A, Matrix::Identity(n, n), Vector::Zero(n));
    const Matrix I = Matrix::Identity(n, n);

    ChenComparison c{};
    c.max_vertex_norm = max_vertex_switched_norm(unit, Norm::Two);
    c.chen_lower = norm(Matrix(A + I), Norm::Two) + norm(Matrix(A - I), Norm::Two);

    const double smin = sigma_min(A);
    if (smin > 1.0) {
        c.chen_upper = c.chen_lower / (smin * smin - 1.0);
        c.singular_gap = 1.0 / (smin - 1.0);
        c.alpha_estimate = brute_force_alpha(unit, Norm::Two, sample_budget, seed);
    }
    return c;
}

} // namespace avb
