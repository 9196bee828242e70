#ifndef AVEBOUNDS_PERTURBATION_HPP
#define AVEBOUNDS_PERTURBATION_HPP

//
// Relative perturbation bounds for absolute value equations.
//
// For x* solving (A, B, b) and y* solving (A + dA, B + dB, b + db):
//
//   normwise       ||x* - y*|| / ||x*||  <=  mu1 * w,
//                  w = ||db||/||b|| (||A|| + ||B||) + ||dA|| + ||dB||
//
// mu1 is the box supremum of ||(A+dA - (B+dB)D)^{-1}||. It is never formed;
// each of the three upper-factor estimators applied to the perturbed pair
// gives a computable replacement (tau, upsilon, nu).
//
//   componentwise  under |dA| <= e|A|, |dB| <= e|B|, |db| <= e|b| and
//                  rho(|A^-1 B|) < 1, with K = (I - |A^-1 B|)^-1 |A^-1|:
//
//                  delta = e ||K(|b| + (|A|+|B|)|x*|)|| / ((1 - e||K(|A|+|B|)||) ||x*||)
//
// TypeII problems use B A^-1 and K = |A^-1| (I - |B A^-1|)^-1.
//

#include <optional>
#include <string>
#include <vector>

#include "avebounds/ave.hpp"
#include "avebounds/error_bounds.hpp"
#include "avebounds/solver.hpp"

namespace avb {

struct Perturbation {
    Matrix dA;
    Matrix dB;
    Vector db;
    std::optional<double> epsilon;   ///< componentwise magnitude, if known
};

Perturbation zero_perturbation(Eigen::Index n);

/// Throws InvalidInput unless the perturbation matches the problem size.
void check_dimensions(const AveProblem& problem, const Perturbation& pert);

/// |dA| <= e|A|, |dB| <= e|B| and |db| <= e|b| entrywise (with a relative
/// rounding allowance). False when epsilon is absent.
bool componentwise_admissible(const AveProblem& problem, const Perturbation& pert);

/// (A + dA, B + dB, b + db) in the same form.
AveProblem perturbed(const AveProblem& problem, const Perturbation& pert);

/// w = ||db||/||b|| (||A|| + ||B||) + ||dA|| + ||dB||. Rejects b = 0.
double perturbation_weight(const AveProblem& problem, const Perturbation& pert, Norm p);

/// upper_factor(problem) * ||db||/||b|| * (||A|| + ||B||).
double rhs_only_bound(const AveProblem& problem, const Vector& db, UpperMethod method, Norm p);

/// upper_factor(perturbed pair, method) * w. Throws Inapplicable when the
/// method does not apply to the perturbed pair.
double relative_bound(const AveProblem& problem, const Perturbation& pert, UpperMethod method,
                      Norm p);

struct PerturbBoundReport {
    double w = 0.0;
    std::optional<double> tau;       ///< Neumann surrogate * w
    std::optional<double> upsilon;   ///< SingularGap surrogate * w
    std::optional<double> nu;        ///< NormRatio surrogate * w
    std::optional<double> delta;     ///< componentwise bound
    std::vector<UpperFactor> mu1_estimates;
    std::vector<std::string> notes;

    std::optional<double> min_bound() const;
};

/// Evaluates all three estimators and fills every applicable field. delta
/// is attempted only when both `x_star` and `pert.epsilon` are given.
/// Throws Inapplicable when no normwise estimator applies to the perturbed
/// pair.
PerturbBoundReport general_relative_bound(const AveProblem& problem, const Perturbation& pert,
                                          Norm p, const Vector* x_star = nullptr);

/// The componentwise bound delta. Throws Inapplicable naming the failed
/// precondition (spectral radius, or the denominator condition).
double componentwise_bound(const AveProblem& problem, const Vector& x_star, double epsilon,
                           Norm p);

struct ClassicalBounds {
    std::optional<double> normwise;
    std::optional<double> componentwise;
    std::string normwise_reason;
    std::string componentwise_reason;
};

/// The textbook bounds for Ax = b: normwise (needs ||A^-1|| ||dA|| < 1) and
/// componentwise (needs e || |A^-1||A| || < 1).
ClassicalBounds classical_linear_bounds(const Matrix& A, const Matrix& dA, const Vector& b,
                                        const Vector& db, const Vector& x_star, double epsilon,
                                        Norm p);

struct ExperimentRecord {
    Eigen::Index n = 0;
    double epsilon = 0.0;
    double r = 0.0;
    double w = 0.0;
    std::optional<double> tau;
    std::optional<double> upsilon;
    std::optional<double> nu;
    std::optional<double> delta;
    /// Whether |dA| <= e|A|, |dB| <= e|B|, |db| <= e|b| holds for this data.
    bool componentwise_hypothesis = false;
    std::size_t iterations_original = 0;
    std::size_t iterations_perturbed = 0;
    std::vector<std::string> notes;
};

/// Solves the original and perturbed problems and tabulates r against every
/// bound. Throws NonConvergence when either solve hits its iteration cap.
ExperimentRecord perturbation_experiment(const AveProblem& problem, const Perturbation& pert,
                                         const SolveOptions& opts, Norm p = Norm::Two);

} // namespace avb

#endif // AVEBOUNDS_PERTURBATION_HPP
