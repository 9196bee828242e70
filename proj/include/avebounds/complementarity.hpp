#ifndef AVEBOUNDS_COMPLEMENTARITY_HPP
#define AVEBOUNDS_COMPLEMENTARITY_HPP

//
// Linear and horizontal linear complementarity problems through their AVE
// reformulations.
//
//   LCP(M, q):      z >= 0, w = Mz + q >= 0, z'w = 0
//                   <=> (I + M)x - (I - M)|x| = -q,  z = |x| + x, w = |x| - x
//   HLCP(M, N, q):  Mz - Nw = q, z, w >= 0, z'w = 0
//                   <=> (M + N)/2 x - (N - M)/2 |x| = q,
//                       z = (|x| + x)/2, w = (|x| - x)/2
//
// The two recovery scalings differ by a factor 2 and are named explicitly.
//

#include <cstdint>
#include <optional>
#include <string>

#include "avebounds/ave.hpp"
#include "avebounds/error_bounds.hpp"
#include "avebounds/kernels.hpp"

namespace avb {

struct LcpProblem {
    Matrix M;
    Vector q;
};

struct HlcpProblem {
    Matrix M;
    Matrix N;
    Vector q;
};

/// Throws InvalidInput on a shape mismatch or non-finite data.
void validate(const LcpProblem& lcp);
void validate(const HlcpProblem& hlcp);

/// A = I + M, B = I - M, b = -q (TypeI).
AveProblem lcp_to_ave(const LcpProblem& lcp);

/// A = (M + N)/2, B = (N - M)/2, b = q (TypeI).
AveProblem hlcp_to_ave(const HlcpProblem& hlcp);

enum class Recovery {
    Shifted,   ///< z = |x| + x, w = |x| - x  (pairs with lcp_to_ave)
    Halved     ///< z = (|x| + x)/2, w = (|x| - x)/2  (pairs with hlcp_to_ave)
};

struct ComplementaritySolution {
    Vector z;
    Vector w;
    double gap = 0.0;   ///< |z'w|
};

ComplementaritySolution recover_solution(const Vector& x, Recovery convention);

/// min{z, Mz + q} evaluated as ((M+I)z + q)/2 - |(M-I)z + q|/2.
Vector lcp_min_residual(const LcpProblem& lcp, const Vector& z);

/// Whether every column representative M(I - T) + NT, T in {0,1}^n diagonal,
/// has a determinant of one common strict sign. Refuses n > limit.
bool column_w_property(const HlcpProblem& hlcp, Eigen::Index limit = kDefaultExhaustiveLimit,
                       kernels::Exec exec = kernels::Exec::Parallel);

/// error_bound_report on hlcp_to_ave. The lower factor is max{||M||, ||N||}.
/// Throws Inconclusive when no upper estimator applies.
ErrorBoundReport hlcp_error_bounds(const HlcpProblem& hlcp, Norm p);

/// ||<M>^-1 max{D_M, I}||_p with D_M the diagonal of M. Inapplicable unless
/// <M> is invertible with an entrywise nonnegative inverse.
double lcp_chen06_bound(const Matrix& M, Norm p = Norm::Two);

/// Relative HLCP perturbation bound
///   a * (||dq||/||q|| (||M+N|| + ||M-N||)/2 + (||dM+dN|| + ||dM-dN||)/2)
/// where a is the chosen upper estimator on the perturbed pair
/// ((M+N+dM+dN)/2, (N-M+dN-dM)/2).
double hlcp_perturb_bound(const HlcpProblem& hlcp, const Matrix& dM, const Matrix& dN,
                          const Vector& dq, UpperMethod method, Norm p);

struct BetaEstimate {
    double value = 0.0;                  ///< +inf when a singular point was hit
    bool exact = false;                  ///< true only for diagonal M with positive diagonal
    std::optional<Vector> singular_at;   ///< the offending lambda when value is +inf
    std::uint64_t evaluated = 0;
};

/// max ||(I - L + L M)^{-1} L||_p over all L in {0,1}^n and `sample_budget`
/// random L in [0,1]^n. This under-estimates the true box maximum except in
/// the diagonal case, where the maximum sits at L = I.
BetaEstimate beta_factor(const Matrix& M, Norm p, std::size_t sample_budget,
                         std::uint64_t seed = 0xbe7a,
                         kernels::Exec exec = kernels::Exec::Parallel);

struct LcpPairBounds {
    double absolute = 0.0;
    std::optional<double> relative;
    std::string relative_reason;   ///< why `relative` is missing
    double beta_a = 0.0;
    double beta_b = 0.0;
    bool estimate = true;          ///< false when both beta values are exact
};

/// For solutions x of LCP(A, b) and y of LCP(B, c):
///   ||x - y||         <= b(A) (b(B) ||A - B|| ||(-c)+|| + ||b - c||)
///   ||x - y|| / ||x|| <= b(B) (||A - B|| + ||b - c|| ||A|| / ||(-b)+||)
LcpPairBounds lcp_pair_bounds(const LcpProblem& first, const LcpProblem& second, Norm p,
                              std::size_t sample_budget, std::uint64_t seed = 0xbe7a);

struct LcpPerturbFactors {
    double beta = 0.0;
    double eta = 0.0;
    double alpha = 0.0;   ///< beta / (1 - eta)
    double delta = 0.0;   ///< epsilon * beta * ||M||
};

/// Requires beta >= 0, 0 <= eta < 1, epsilon >= 0, norm_m >= 0.
LcpPerturbFactors lcp_perturb_factors(double beta, double eta, double epsilon, double norm_m);

struct RegionBound {
    double absolute = 0.0;             ///< alpha^2 ||A-B|| ||(-c)+|| + alpha ||b-c||
    std::optional<double> relative;    ///< 2 delta / (1 - delta), when delta < 1
};

RegionBound chen07_region_bound(const LcpPerturbFactors& factors, double norm_ab,
                                double negc_norm, double bc_norm);

} // namespace avb

#endif // AVEBOUNDS_COMPLEMENTARITY_HPP
