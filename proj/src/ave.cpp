#include "avebounds/ave.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "avebounds/errors.hpp"
#include "avebounds/kernels.hpp"

namespace avb {

std::string to_string(Form f) { return f == Form::TypeI ? "TypeI" : "TypeII"; }

std::string to_string(Verdict v)
{
    switch (v) {
    case Verdict::ProvenUnique: return "ProvenUnique";
    case Verdict::HeuristicPass: return "HeuristicPass";
    case Verdict::Inconclusive: return "Inconclusive";
    case Verdict::FailsAllSufficientConditions: return "FailsAllSufficientConditions";
    }
    return "?";
}

AveProblem::AveProblem(Matrix A, Matrix B, Vector b, Form form)
    : A_(std::move(A)), B_(std::move(B)), b_(std::move(b)), form_(form)
{
    require_square(A_, "A");
    require_square(B_, "B");
    if (A_.rows() != B_.rows())
        throw InvalidInput("A and B must have the same size");
    if (b_.size() != A_.rows())
        throw InvalidInput("b length does not match A");
    require_finite(A_, "A");
    require_finite(B_, "B");
    require_finite(b_, "b");
}

Matrix AveProblem::switched(const Vector& d) const
{
    if (form_ == Form::TypeI) return A_ - B_ * d.asDiagonal();
    return A_ - d.asDiagonal() * B_;
}

Matrix AveProblem::ratio() const
{
    const Matrix Ainv = inverse(A_);
    return form_ == Form::TypeI ? Matrix(Ainv * B_) : Matrix(B_ * Ainv);
}

Vector residual(const AveProblem& problem, const Vector& x)
{
    if (x.size() != problem.size())
        throw InvalidInput("residual: x has the wrong length");
    if (problem.form() == Form::TypeI)
        return problem.A() * x - problem.B() * x.cwiseAbs() - problem.b();
    return problem.A() * x - (problem.B() * x).cwiseAbs() - problem.b();
}

SignDiagonal sign_diagonal(const Vector& a, const Vector& b)
{
    if (a.size() != b.size())
        throw InvalidInput("sign_diagonal: vectors differ in length");
    Vector d = Vector::Zero(a.size());
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        const double diff = a(i) - b(i);
        if (diff != 0.0) {
            // ||a|-|b|| <= |a-b| keeps the quotient in [-1, 1]; clamp rounding
            d(i) = std::clamp((std::abs(a(i)) - std::abs(b(i))) / diff, -1.0, 1.0);
        }
    }
    return {std::move(d)};
}

SolvabilityReport solvability_report(const AveProblem& problem, Eigen::Index exhaustive_limit,
                                     std::uint64_t seed)
{
    constexpr double kInf = std::numeric_limits<double>::infinity();
    const bool type1 = problem.form() == Form::TypeI;
    const std::string ratio_name = type1 ? "A^-1 B" : "B A^-1";

    SolvabilityReport report;
    Matrix Ainv;
    const bool a_ok = try_inverse(problem.A(), Ainv);
    if (a_ok) {
        const Matrix R = type1 ? Matrix(Ainv * problem.B()) : Matrix(problem.B() * Ainv);
        const double rho = spectral_radius_nonneg(R.cwiseAbs());
        report.checks.push_back({"rho(|" + ratio_name + "|) < 1", rho, 1.0, rho < 1.0});
    } else {
        report.checks.push_back({"rho(|" + ratio_name + "|) < 1", kInf, 1.0, false});
        report.note = "A is numerically singular";
    }

    const double smin_a = sigma_min(problem.A());
    const double smax_b = sigma_max(problem.B());
    report.checks.push_back({"sigma_min(A) > sigma_max(B)", smin_a, smax_b, smin_a > smax_b});

    if (a_ok) {
        const Matrix R = type1 ? Matrix(Ainv * problem.B()) : Matrix(problem.B() * Ainv);
        const double s = sigma_max(R);
        report.checks.push_back({"sigma_max(" + ratio_name + ") < 1", s, 1.0, s < 1.0});
    } else {
        report.checks.push_back({"sigma_max(" + ratio_name + ") < 1", kInf, 1.0, false});
    }

    for (const auto& c : report.checks) {
        if (c.passed) {
            report.verdict = Verdict::ProvenUnique;
            return report;
        }
    }

    const Eigen::Index n = problem.size();
    if (n > exhaustive_limit) {
        report.verdict = Verdict::FailsAllSufficientConditions;
        return report;
    }

    // sign of det(A - BD); 0 when numerically singular
    const kernels::DiagonalFn det_sign = [&](const Vector& d) {
        Eigen::PartialPivLU<Matrix> lu(problem.switched(d));
        if (!(lu.rcond() >= kSingularRcond)) return 0.0;
        return lu.determinant() > 0.0 ? 1.0 : -1.0;
    };

    auto census = kernels::sign_census_vertices(n, -1.0, 1.0, det_sign, 0.5);
    const Matrix samples = kernels::sample_box(n, -1.0, 1.0, kSolvabilitySamples, seed);
    const auto interior = kernels::sign_census_points(samples, det_sign, 0.5);
    census.positive += interior.positive;
    census.negative += interior.negative;
    census.zero += interior.zero;
    report.scanned = census.positive + census.negative + census.zero;

    if (census.one_strict_sign()) {
        report.verdict = Verdict::HeuristicPass;
        report.note = "det(" + std::string(type1 ? "A-BD" : "A-DB") +
                      ") kept one sign at every scanned diagonal";
    } else {
        report.verdict = Verdict::Inconclusive;
        report.note = census.zero > 0
                          ? "a scanned diagonal gives a singular matrix"
                          : "determinant changes sign, so some diagonal in the box is singular";
    }
    return report;
}

} // namespace avb
