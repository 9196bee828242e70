#ifndef AVEBOUNDS_AVE_HPP
#define AVEBOUNDS_AVE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "avebounds/numerics.hpp"

namespace avb {

/// TypeI: Ax - B|x| = b.  TypeII: Ax - |Bx| = b.
enum class Form { TypeI, TypeII };

std::string to_string(Form f);

/// An absolute value equation. A and B are n x n, b has length n, all finite.
class AveProblem {
public:
    AveProblem(Matrix A, Matrix B, Vector b, Form form = Form::TypeI);

    const Matrix& A() const noexcept { return A_; }
    const Matrix& B() const noexcept { return B_; }
    const Vector& b() const noexcept { return b_; }
    Form form() const noexcept { return form_; }
    Eigen::Index size() const noexcept { return b_.size(); }

    /// A - B D (TypeI) or A - D B (TypeII) for D = diag(d).
    Matrix switched(const Vector& d) const;

    /// The "ratio" matrix of the sufficient conditions: A^{-1}B (TypeI) or
    /// B A^{-1} (TypeII). Throws SingularMatrix if A is singular.
    Matrix ratio() const;

private:
    Matrix A_;
    Matrix B_;
    Vector b_;
    Form form_;
};

/// Natural residual: Ax - B|x| - b (TypeI) or Ax - |Bx| - b (TypeII).
Vector residual(const AveProblem& problem, const Vector& x);

/// D = diag(d) with |d_i| <= 1.
struct SignDiagonal {
    Vector d;
};

/// d with |a_i| - |b_i| = d_i (a_i - b_i); d_i = 0 where a_i == b_i.
SignDiagonal sign_diagonal(const Vector& a, const Vector& b);

enum class Verdict { ProvenUnique, HeuristicPass, Inconclusive, FailsAllSufficientConditions };

std::string to_string(Verdict v);

struct SolvabilityCheck {
    std::string name;
    double value;
    double threshold;
    bool passed;
};

struct SolvabilityReport {
    std::vector<SolvabilityCheck> checks;
    Verdict verdict = Verdict::Inconclusive;
    /// Filled when the vertex/sample scan ran.
    std::uint64_t scanned = 0;
    std::string note;
};

inline constexpr Eigen::Index kDefaultExhaustiveLimit = 20;
inline constexpr std::size_t kSolvabilitySamples = 1000;

/// Evaluates the three sufficient conditions for unique solvability. When all
/// fail and n <= exhaustive_limit, scans det(A - BD) (or det(A - DB)) over
/// every sign vertex plus sampled interior diagonals. The scan is heuristic:
/// it never yields ProvenUnique.
SolvabilityReport solvability_report(const AveProblem& problem,
                                     Eigen::Index exhaustive_limit = kDefaultExhaustiveLimit,
                                     std::uint64_t seed = 0x5eed);

} // namespace avb

#endif // AVEBOUNDS_AVE_HPP
