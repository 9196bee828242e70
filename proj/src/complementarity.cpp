#include "avebounds/complementarity.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/LU>

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

Matrix identity(Eigen::Index n) { return Matrix::Identity(n, n); }

bool exact_beta_case(const Matrix& M)
{
    return M.isDiagonal(0.0) && (M.diagonal().array() > 0.0).all();
}

} // namespace

void validate(const LcpProblem& lcp)
{
    require_square(lcp.M, "M");
    if (lcp.q.size() != lcp.M.rows()) throw InvalidInput("q must have length n");
    require_finite(lcp.M, "M");
    require_finite(lcp.q, "q");
}

void validate(const HlcpProblem& hlcp)
{
    require_square(hlcp.M, "M");
    require_square(hlcp.N, "N");
    if (hlcp.N.rows() != hlcp.M.rows()) throw InvalidInput("M and N must have the same size");
    if (hlcp.q.size() != hlcp.M.rows()) throw InvalidInput("q must have length n");
    require_finite(hlcp.M, "M");
    require_finite(hlcp.N, "N");
    require_finite(hlcp.q, "q");
}

AveProblem lcp_to_ave(const LcpProblem& lcp)
{
    validate(lcp);
    const Matrix I = identity(lcp.M.rows());
    return AveProblem(I + lcp.M, I - lcp.M, -lcp.q);
}

AveProblem hlcp_to_ave(const HlcpProblem& hlcp)
{
    validate(hlcp);
    return AveProblem(0.5 * (hlcp.M + hlcp.N), 0.5 * (hlcp.N - hlcp.M), hlcp.q);
}

ComplementaritySolution recover_solution(const Vector& x, Recovery convention)
{
    const double s = convention == Recovery::Shifted ? 1.0 : 0.5;
    ComplementaritySolution out;
    out.z = s * (x.cwiseAbs() + x);
    out.w = s * (x.cwiseAbs() - x);
    out.gap = std::abs(out.z.dot(out.w));
    return out;
}

Vector lcp_min_residual(const LcpProblem& lcp, const Vector& z)
{
    validate(lcp);
    if (z.size() != lcp.q.size()) throw InvalidInput("z must have length n");
    const Matrix I = identity(lcp.M.rows());
    return 0.5 * ((lcp.M + I) * z + lcp.q) - 0.5 * ((lcp.M - I) * z + lcp.q).cwiseAbs();
}

bool column_w_property(const HlcpProblem& hlcp, Eigen::Index limit, kernels::Exec exec)
{
    validate(hlcp);
    const Eigen::Index n = hlcp.M.rows();
    if (n > limit)
        throw InvalidInput("column_w_property: n = " + std::to_string(n) + " exceeds the limit " +
                           std::to_string(limit));

    const kernels::DiagonalFn det = [&](const Vector& t) {
        Matrix rep(n, n);
        for (Eigen::Index j = 0; j < n; ++j) rep.col(j) = t(j) > 0.5 ? hlcp.N.col(j) : hlcp.M.col(j);
        const Eigen::PartialPivLU<Matrix> lu(rep);
        if (!(lu.rcond() >= kSingularRcond)) return 0.0;
        return lu.determinant();
    };
    return kernels::sign_census_vertices(n, 0.0, 1.0, det, 0.0, exec).one_strict_sign();
}

ErrorBoundReport hlcp_error_bounds(const HlcpProblem& hlcp, Norm p)
{
    ErrorBoundReport report = error_bound_report(hlcp_to_ave(hlcp), p);
    if (!report.best_upper())
        throw Inconclusive("hlcp_error_bounds: no upper-factor estimator is applicable");
    return report;
}

double lcp_chen06_bound(const Matrix& M, Norm p)
{
    require_square(M, "M");
    require_finite(M, "M");
    Matrix inv;
    if (!try_inverse(comparison_matrix(M), inv)) throw Inapplicable("<M> nonsingular");
    const double scale = inv.cwiseAbs().maxCoeff();
    if (inv.minCoeff() < -1e-12 * scale)
        throw Inapplicable("<M>^-1 >= 0 (M is not an H-matrix)");
    const Vector d = M.diagonal().cwiseMax(1.0);
    return norm(Matrix(inv * d.asDiagonal()), p);
}

double hlcp_perturb_bound(const HlcpProblem& hlcp, const Matrix& dM, const Matrix& dN,
                          const Vector& dq, UpperMethod method, Norm p)
{
    validate(hlcp);
    const Eigen::Index n = hlcp.M.rows();
    if (dM.rows() != n || dM.cols() != n || dN.rows() != n || dN.cols() != n || dq.size() != n)
        throw InvalidInput("hlcp_perturb_bound: perturbation dimensions do not match");
    const double nq = norm(hlcp.q, p);
    if (!(nq > 0.0)) throw InvalidInput("relative perturbation bound undefined for q = 0");

    const AveProblem hat(0.5 * (hlcp.M + hlcp.N + dM + dN), 0.5 * (hlcp.N - hlcp.M + dN - dM),
                         hlcp.q + dq);
    const double a = upper_factor(hat, method, p);
    const double data = norm(dq, p) / nq *
                            (norm(Matrix(hlcp.M + hlcp.N), p) + norm(Matrix(hlcp.M - hlcp.N), p)) /
                            2.0 +
                        (norm(Matrix(dM + dN), p) + norm(Matrix(dM - dN), p)) / 2.0;
    return a * data;
}

BetaEstimate beta_factor(const Matrix& M, Norm p, std::size_t sample_budget, std::uint64_t seed,
                         kernels::Exec exec)
{
    require_square(M, "M");
    require_finite(M, "M");
    const Eigen::Index n = M.rows();
    if (n > kMaxBruteForceDim)
        throw InvalidInput("beta_factor: n must be <= " + std::to_string(kMaxBruteForceDim));

    const Matrix I = identity(n);
    const kernels::DiagonalFn f = [&](const Vector& lam) {
        const Matrix L = lam.asDiagonal();
        const Eigen::PartialPivLU<Matrix> lu(I - L + L * M);
        if (!(lu.rcond() >= kSingularRcond)) return kInf;
        return norm(Matrix(lu.solve(L)), p);
    };

    auto best = kernels::max_over_vertices(n, 0.0, 1.0, f, exec);
    if (sample_budget > 0) {
        const Matrix pts = kernels::sample_box(n, 0.0, 1.0, sample_budget, seed);
        best = kernels::merge(best, kernels::max_over_points(pts, f, exec));
    }

    BetaEstimate out;
    out.value = best.value;
    out.evaluated = best.evaluated;
    out.exact = exact_beta_case(M);
    if (std::isinf(best.value)) out.singular_at = best.argmax;
    return out;
}

LcpPairBounds lcp_pair_bounds(const LcpProblem& first, const LcpProblem& second, Norm p,
                              std::size_t sample_budget, std::uint64_t seed)
{
    validate(first);
    validate(second);
    if (first.M.rows() != second.M.rows())
        throw InvalidInput("lcp_pair_bounds: problems differ in size");

    const BetaEstimate ba = beta_factor(first.M, p, sample_budget, seed);
    const BetaEstimate bb = beta_factor(second.M, p, sample_budget, seed);
    const double nab = norm(Matrix(first.M - second.M), p);
    const double nbc = norm(Vector(first.q - second.q), p);

    LcpPairBounds out;
    out.beta_a = ba.value;
    out.beta_b = bb.value;
    out.estimate = !(ba.exact && bb.exact);
    out.absolute = ba.value * (bb.value * nab * norm(positive_part(-second.q), p) + nbc);

    const double negb = norm(positive_part(-first.q), p);
    if (negb > 0.0)
        out.relative = bb.value * (nab + nbc * norm(first.M, p) / negb);
    else
        out.relative_reason = "(-b)+ != 0";
    return out;
}

LcpPerturbFactors lcp_perturb_factors(double beta, double eta, double epsilon, double norm_m)
{
    if (!(beta >= 0.0) || !(epsilon >= 0.0) || !(norm_m >= 0.0))
        throw InvalidInput("lcp_perturb_factors: beta, epsilon and ||M|| must be nonnegative");
    if (!(eta >= 0.0 && eta < 1.0))
        throw InvalidInput("lcp_perturb_factors: eta must lie in [0, 1) (got " + fmt(eta) + ")");
    return {beta, eta, beta / (1.0 - eta), epsilon * beta * norm_m};
}

RegionBound chen07_region_bound(const LcpPerturbFactors& factors, double norm_ab,
                                double negc_norm, double bc_norm)
{
    if (!(factors.eta >= 0.0 && factors.eta < 1.0))
        throw InvalidInput("chen07_region_bound: eta must lie in [0, 1)");
    RegionBound out;
    const double a = factors.alpha;
    out.absolute = a * a * norm_ab * negc_norm + a * bc_norm;
    if (factors.delta < 1.0) out.relative = 2.0 * factors.delta / (1.0 - factors.delta);
    return out;
}

} // namespace avb
