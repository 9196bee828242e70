#ifndef AVEBOUNDS_ERROR_BOUNDS_HPP
#define AVEBOUNDS_ERROR_BOUNDS_HPP

//
// Error bounds for absolute value equations.
//
// For the unique solution x* and any x,
//
//     ||r(x)|| / lower  <=  ||x - x*||  <=  upper * ||r(x)||
//
// where lower = max ||A - BD|| and upper = max ||(A - BD)^{-1}|| over
// diagonal D with entries in [-1, 1] (A - DB for TypeII). The lower factor
// has the closed form max{||A - B||, ||A + B||}. The upper factor is a box
// supremum with no closed form; three computable over-estimates are offered,
// each valid under its own hypothesis:
//
//   Neumann      rho(|A^-1 B|) < 1         ||(I - |A^-1 B|)^-1|| ||A^-1||
//   SingularGap  s_min(A) > s_max(B)       1 / (s_min(A) - s_max(B))        (p = 2)
//   NormRatio    B invertible,             ||A^-1 B|| ||B^-1|| / (1 - ||A^-1 B||)
//                ||A^-1 B||_2 < 1                                            (p = 2)
//
// TypeII mirrors these with B A^-1 in place of A^-1 B.
//
// brute_force_alpha evaluates the supremum at every sign vertex plus random
// interior points. It is an under-estimate of the true supremum and is kept
// as a verification oracle for the three formulas above.
//

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "avebounds/ave.hpp"
#include "avebounds/kernels.hpp"

namespace avb {

enum class UpperMethod { Neumann, SingularGap, NormRatio };

inline constexpr std::array<UpperMethod, 3> kUpperMethods = {
    UpperMethod::Neumann, UpperMethod::SingularGap, UpperMethod::NormRatio};

std::string to_string(UpperMethod m);
UpperMethod parse_upper_method(std::string_view text);

/// max{||A - B||_p, ||A + B||_p}.
double lower_factor(const AveProblem& problem, Norm p);

/// Throws Inapplicable (naming the failed hypothesis) or InvalidInput when a
/// 2-norm-only method is requested with another p.
double upper_factor(const AveProblem& problem, UpperMethod method, Norm p);

struct UpperFactor {
    UpperMethod method;
    double value = 0.0;
    bool applicable = false;
    std::string reason;   ///< why not applicable
};

UpperFactor try_upper_factor(const AveProblem& problem, UpperMethod method, Norm p);

struct ChenBounds {
    double lower;   ///< ||A + I|| + ||A - I||
    double upper;   ///< lower / (s_min(A)^2 - 1)
};

/// Bounds for Ax - |x| = b under s_min(A) > 1; Inapplicable otherwise.
ChenBounds chen_bounds(const Matrix& A, Norm p = Norm::Two);

struct ErrorBoundReport {
    Norm p = Norm::Two;
    double lower_factor = 0.0;
    std::vector<UpperFactor> upper_factors;
    /// Present only when B = I and s_min(A) > 1.
    std::optional<double> chen_lower;
    std::optional<double> chen_upper;

    /// Smallest applicable upper factor.
    std::optional<UpperFactor> best_upper() const;
};

ErrorBoundReport error_bound_report(const AveProblem& problem, Norm p);

struct ErrorInterval {
    double residual_norm = 0.0;
    double lower = 0.0;
    double upper = 0.0;
    UpperMethod upper_method = UpperMethod::Neumann;
};

/// Brackets ||x - x*||_p. Throws Inconclusive when no estimator applies.
ErrorInterval error_interval(const AveProblem& problem, const Vector& x, Norm p);

inline constexpr Eigen::Index kMaxBruteForceDim = 20;

/// max ||(A - BD)^{-1}||_p over all sign vertices and `sample_budget`
/// uniformly drawn interior diagonals. +inf if any visited matrix is singular.
double brute_force_alpha(const AveProblem& problem, Norm p, std::size_t sample_budget,
                         std::uint64_t seed = 0xa1fa,
                         kernels::Exec exec = kernels::Exec::Parallel);

/// max ||A - BD||_p over sign vertices D; the enumerated counterpart of
/// lower_factor, used to cross-check the closed form.
double max_vertex_switched_norm(const AveProblem& problem, Norm p,
                                kernels::Exec exec = kernels::Exec::Parallel);

struct Prop21Slack {
    double slack1;                  ///< ||aI+A|| + ||aI-A|| - (2a - ||A||)
    std::optional<double> slack2;   ///< ||aI+A|| + ||aI-A|| - (a + ||A||), when ||A|| <= a
};

/// Slack in the two norm inequalities relating ||aI + A|| + ||aI - A|| to a
/// and ||A||. Both slacks are nonnegative for any induced norm.
Prop21Slack prop21_slack(const Matrix& A, double alpha, Norm p);

/// The sharpness comparison for B = I in the 2-norm.
struct ChenComparison {
    double max_vertex_norm;                    ///< max ||A - D||_2 over sign vertices
    double chen_lower;                         ///< ||A + I||_2 + ||A - I||_2
    std::optional<double> alpha_estimate;      ///< brute_force_alpha with B = I
    std::optional<double> chen_upper;
    std::optional<double> singular_gap;        ///< 1 / (s_min(A) - 1)

    bool lower_part_holds(double tol = 1e-10) const;
    bool upper_part_holds(double tol = 1e-8) const;
};

ChenComparison chen_comparison(const Matrix& A, std::size_t sample_budget,
                               std::uint64_t seed = 0xc4e2);

} // namespace avb

#endif // AVEBOUNDS_ERROR_BOUNDS_HPP
