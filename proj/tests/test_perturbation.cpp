#include <doctest.h>

#include <cmath>

#include "avebounds/complementarity.hpp"
#include "avebounds/errors.hpp"
#include "avebounds/harness.hpp"
#include "avebounds/perturbation.hpp"
#include "oracles.hpp"

using namespace avb;

namespace {

AveProblem scalar_problem()
{
    return AveProblem(Matrix::Constant(1, 1, 2.0), Matrix::Constant(1, 1, 1.0),
                      Vector::Constant(1, 3.0));
}

// diagonally dominant A with rho(|A^-1 B|) < 0.8
AveProblem random_problem(oracle::Rng& rng, Eigen::Index n, Form form = Form::TypeI)
{
    const Matrix A = rng.matrix(n, n) + 4.0 * Matrix::Identity(n, n);
    Matrix B = rng.matrix(n, n);
    const Matrix Ainv = oracle::inverse(A);
    const Matrix R = form == Form::TypeI ? Matrix(Ainv * B) : Matrix(B * Ainv);
    const double rho = oracle::perron_root(R.cwiseAbs());
    if (rho >= 0.8) B *= 0.75 / rho;
    return AveProblem(A, B, rng.vector(n, -5, 5), form);
}

// entrywise perturbation with |dX| <= eps |X|
Perturbation random_componentwise(oracle::Rng& rng, const AveProblem& p, double eps)
{
    const Eigen::Index n = p.size();
    Perturbation d;
    d.dA = eps * p.A().cwiseProduct(rng.matrix(n, n));
    d.dB = eps * p.B().cwiseProduct(rng.matrix(n, n));
    d.db = eps * p.b().cwiseProduct(rng.vector(n));
    d.epsilon = eps;
    return d;
}

// vertex maximum of |(A - BD)^-1| (entrywise), the exact componentwise factor on small n
Matrix vertex_abs_inverse_max(const AveProblem& p)
{
    const Eigen::Index n = p.size();
    Matrix best = Matrix::Zero(n, n);
    for (std::uint64_t k = 0; k < (std::uint64_t{1} << n); ++k) {
        const Vector d = kernels::vertex(n, k, -1.0, 1.0);
        best = best.cwiseMax(oracle::inverse(p.switched(d)).cwiseAbs());
    }
    return best;
}

} // namespace

TEST_CASE("right-hand-side bound")
{
    const AveProblem p = scalar_problem();
    CHECK(rhs_only_bound(p, Vector::Zero(1), UpperMethod::Neumann, Norm::Two) == 0.0);
    CHECK(rhs_only_bound(p, Vector::Constant(1, 0.3), UpperMethod::Neumann, Norm::Two) ==
          doctest::Approx(0.3));

    const AveProblem zero_b(Matrix::Constant(1, 1, 2.0), Matrix::Constant(1, 1, 1.0), Vector::Zero(1));
    CHECK_THROWS_AS(rhs_only_bound(zero_b, Vector::Ones(1), UpperMethod::Neumann, Norm::Two),
                    InvalidInput);
}

TEST_CASE("right-hand-side bound equals the general bound with unperturbed matrices")
{
    const AveProblem p = lcp_to_ave(gen_tridiagonal_lcp(30));
    const Eigen::Index n = p.size();
    const Perturbation d{Matrix::Zero(n, n), Matrix::Zero(n, n), Vector::Constant(n, 0.01), 0.01};
    for (UpperMethod m : {UpperMethod::Neumann, UpperMethod::NormRatio}) {
        const double a = rhs_only_bound(p, d.db, m, Norm::Two);
        const double b = relative_bound(p, d, m, Norm::Two);
        CHECK(a == doctest::Approx(b).epsilon(1e-12));
    }
}

TEST_CASE("zero perturbation gives zero bounds")
{
    const AveProblem p = lcp_to_ave(gen_tridiagonal_lcp(10));
    const Perturbation z = zero_perturbation(p.size());
    CHECK(perturbation_weight(p, z, Norm::Two) == 0.0);
    const SolveResult s = picard_solve(p);
    const PerturbBoundReport r = general_relative_bound(p, z, Norm::Two, &s.x);
    CHECK(r.w == 0.0);
    REQUIRE(r.tau);
    CHECK(*r.tau == 0.0);
    REQUIRE(r.nu);
    CHECK(*r.nu == 0.0);
    REQUIRE(r.delta);
    CHECK(*r.delta == 0.0);

    const ExperimentRecord e = perturbation_experiment(p, z, {});
    CHECK(e.r == 0.0);
    CHECK(*e.tau == 0.0);
    CHECK(*e.delta == 0.0);
}

TEST_CASE("perturbation weight and bound match their definitions")
{
    const AveProblem p = lcp_to_ave(gen_tridiagonal_lcp(12));
    const Perturbation d = gen_perturbation(ExampleId::Tridiagonal, 12, 0.02);
    const double w = oracle::two_norm(d.dA) + oracle::two_norm(d.dB) +
                     d.db.norm() / p.b().norm() * (oracle::two_norm(p.A()) + oracle::two_norm(p.B()));
    CHECK(perturbation_weight(p, d, Norm::Two) == doctest::Approx(w).epsilon(1e-10));

    const Matrix Ah = p.A() + d.dA;
    const Matrix Bh = p.B() + d.dB;
    const Matrix Ainv = oracle::inverse(Ah);
    const Matrix S = oracle::inverse(Matrix::Identity(12, 12) - (Ainv * Bh).cwiseAbs());
    const double tau = oracle::two_norm(S) * oracle::two_norm(Ainv) * w;
    CHECK(relative_bound(p, d, UpperMethod::Neumann, Norm::Two) == doctest::Approx(tau).epsilon(1e-9));
}

TEST_CASE("report notes the inapplicable estimators")
{
    const AveProblem p = lcp_to_ave(gen_tridiagonal_lcp(30));
    const Perturbation d = gen_perturbation(ExampleId::Tridiagonal, 30, 0.01);
    const PerturbBoundReport r = general_relative_bound(p, d, Norm::Two);
    CHECK(r.tau);
    CHECK(r.nu);
    CHECK_FALSE(r.upsilon);
    CHECK(r.mu1_estimates.size() == 3);
    CHECK_FALSE(r.notes.empty());
    CHECK_FALSE(r.delta);   // no x* given

    CHECK_THROWS_AS(relative_bound(p, d, UpperMethod::SingularGap, Norm::Two), Inapplicable);
}

TEST_CASE("the general bound is linear in epsilon for the tridiagonal family")
{
    const AveProblem p = lcp_to_ave(gen_tridiagonal_lcp(30));
    const double w1 = perturbation_weight(p, gen_perturbation(ExampleId::Tridiagonal, 30, 0.01), Norm::Two);
    const double w3 = perturbation_weight(p, gen_perturbation(ExampleId::Tridiagonal, 30, 0.03), Norm::Two);
    CHECK(w3 / w1 == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("componentwise bound")
{
    const AveProblem p = scalar_problem();
    CHECK(componentwise_bound(p, Vector::Constant(1, 3.0), 0.0, Norm::Two) == 0.0);

    // scalar: K = 1/(1 - 1/2) * 1/2 = 1, delta = e (3 + 3 * 3) / ((1 - 3e) * 3)
    const double e = 0.01;
    CHECK(componentwise_bound(p, Vector::Constant(1, 3.0), e, Norm::Two) ==
          doctest::Approx(e * 12.0 / ((1 - 3 * e) * 3.0)));

    CHECK_THROWS_AS(componentwise_bound(p, Vector::Constant(1, 3.0), 0.5, Norm::Two), Inapplicable);
    CHECK_THROWS_AS(componentwise_bound(p, Vector::Zero(1), 0.01, Norm::Two), InvalidInput);
    const AveProblem bad(Matrix::Identity(2, 2), 2 * Matrix::Identity(2, 2), Vector::Ones(2));
    CHECK_THROWS_AS(componentwise_bound(bad, Vector::Ones(2), 0.01, Norm::Two), Inapplicable);
}

TEST_CASE("componentwise bound never drops below epsilon")
{
    // |A^-1||A| >= I entrywise on the diagonal, so the numerator alone gives delta >= e
    oracle::Rng rng(61);
    for (int trial = 0; trial < 50; ++trial) {
        const AveProblem p = random_problem(rng, rng.integer(1, 8), trial % 2 ? Form::TypeII : Form::TypeI);
        const Vector x = rng.vector(p.size(), -3, 3);
        const double e = 1e-4;
        for (Norm q : {Norm::One, Norm::Two, Norm::Inf}) {
            try {
                CHECK(componentwise_bound(p, x, e, q) >= e * (1 - 1e-12));
            } catch (const Inapplicable&) {
            }
        }
    }
}

TEST_CASE("componentwise inequality holds with the exact vertex factor")
{
    oracle::Rng rng(62);
    int checked = 0;
    for (int trial = 0; trial < 200; ++trial) {
        const Form form = trial % 2 ? Form::TypeII : Form::TypeI;
        const AveProblem p = random_problem(rng, rng.integer(1, 6), form);
        const double eps = 1e-3;
        const Perturbation d = random_componentwise(rng, p, eps);
        REQUIRE(componentwise_admissible(p, d));
        const SolveResult sx = picard_solve(p, {std::nullopt, 1e-13, 100000});
        const SolveResult sy = picard_solve(perturbed(p, d), {std::nullopt, 1e-13, 100000});
        REQUIRE(sx.converged);
        REQUIRE(sy.converged);

        const Matrix K = vertex_abs_inverse_max(p);
        const Matrix C = p.A().cwiseAbs() + p.B().cwiseAbs();
        for (Norm q : {Norm::One, Norm::Two, Norm::Inf}) {
            const double g = eps * oracle::norm(Matrix(K * C), q);
            if (g >= 1.0) continue;
            const Vector v = p.b().cwiseAbs() + C * sx.x.cwiseAbs();
            const double mu2_bound = eps * norm(Vector(K * v), q) / ((1 - g) * norm(sx.x, q));
            const double r = norm(Vector(sx.x - sy.x), q) / norm(sx.x, q);
            CHECK(r <= mu2_bound * (1 + 1e-8) + 1e-11);
            // the shipped closed form dominates the vertex factor
            CHECK(mu2_bound <= componentwise_bound(p, sx.x, eps, q) * (1 + 1e-9));
            ++checked;
        }
    }
    CHECK(checked > 100);
}

TEST_CASE("admissibility flag")
{
    CHECK(componentwise_admissible(lcp_to_ave(gen_tridiagonal_lcp(5)),
                                   gen_perturbation(ExampleId::Tridiagonal, 5, 0.01)));

    // B is zero across block boundaries on the first off-diagonal, dB is not
    const AveProblem p = lcp_to_ave(gen_block_lcp(3));
    Perturbation d = gen_perturbation(ExampleId::BlockTridiagonal, 9, 0.01);
    CHECK_FALSE(componentwise_admissible(p, d));
    d.dA = 0.01 * p.A();
    d.dB = -0.01 * p.B();
    d.db = 0.01 * p.b();
    CHECK(componentwise_admissible(p, d));
    d.epsilon.reset();
    CHECK_FALSE(componentwise_admissible(p, d));

    Perturbation wrong = zero_perturbation(4);
    CHECK_THROWS_AS(check_dimensions(p, wrong), InvalidInput);
}

TEST_CASE("classical linear-system bounds")
{
    const Matrix A = (Matrix(2, 2) << 3, 1, 1, 2).finished();
    const Vector b = Vector::Ones(2);
    const Vector x = oracle::inverse(A) * b;
    const ClassicalBounds z = classical_linear_bounds(A, Matrix::Zero(2, 2), b, Vector::Zero(2), x, 0.0, Norm::Two);
    REQUIRE(z.normwise);
    REQUIRE(z.componentwise);
    CHECK(*z.normwise == 0.0);
    CHECK(*z.componentwise == 0.0);

    const ClassicalBounds big = classical_linear_bounds(A, 10 * Matrix::Identity(2, 2), b, Vector::Zero(2), x, 2.0, Norm::Two);
    CHECK_FALSE(big.normwise);
    CHECK_FALSE(big.componentwise);
    CHECK_FALSE(big.normwise_reason.empty());
}

TEST_CASE("zero B reduces to the classical bounds")
{
    oracle::Rng rng(63);
    for (int trial = 0; trial < 100; ++trial) {
        const Eigen::Index n = rng.integer(1, 8);
        const Matrix A = rng.matrix(n, n) + 4.0 * Matrix::Identity(n, n);
        const Vector b = rng.vector(n, -5, 5);
        const double eps = 1e-3;
        const Matrix dA = eps * A.cwiseProduct(rng.matrix(n, n));
        const Vector db = eps * b.cwiseProduct(rng.vector(n));
        const Vector x = oracle::inverse(A) * b;
        const AveProblem p(A, Matrix::Zero(n, n), b);
        const Perturbation d{dA, Matrix::Zero(n, n), db, eps};

        for (Norm q : {Norm::One, Norm::Two, Norm::Inf}) {
            const ClassicalBounds cl = classical_linear_bounds(A, dA, b, db, x, eps, q);
            REQUIRE(cl.normwise);
            REQUIRE(cl.componentwise);

            // componentwise: identical formula once B = 0
            CHECK(componentwise_bound(p, x, eps, q) == doctest::Approx(*cl.componentwise).epsilon(1e-12));

            // normwise: w times the Banach surrogate of ||(A + dA)^-1|| is the classical value
            const double w = perturbation_weight(p, d, q);
            const double nAinv = oracle::norm(oracle::inverse(A), q);
            const double banach = nAinv / (1 - nAinv * oracle::norm(dA, q));
            CHECK(banach * w == doctest::Approx(*cl.normwise).epsilon(1e-12));

            // the exact inverse norm can only tighten it
            const double exact = oracle::norm(oracle::inverse(Matrix(A + dA)), q) * w;
            CHECK(exact <= *cl.normwise * (1 + 1e-12));
        }
    }
}

TEST_CASE("experiment records")
{
    const AveProblem p = lcp_to_ave(gen_tridiagonal_lcp(30));
    const ExperimentRecord e = perturbation_experiment(p, gen_perturbation(ExampleId::Tridiagonal, 30, 0.01), {});
    CHECK(e.n == 30);
    CHECK(e.epsilon == 0.01);
    CHECK(e.r == doctest::Approx(0.0040).epsilon(0.05));
    REQUIRE(e.tau);
    CHECK(*e.tau == doctest::Approx(0.2845).epsilon(5e-4));
    REQUIRE(e.nu);
    CHECK(*e.nu == doctest::Approx(0.1104).epsilon(5e-4));
    CHECK(e.r <= *e.tau);
    CHECK(e.r <= *e.nu);
    CHECK(e.componentwise_hypothesis);

    // a solve that cannot converge
    const AveProblem bad(Matrix::Identity(1, 1), Matrix::Constant(1, 1, 2.0), Vector::Ones(1));
    CHECK_THROWS_AS(perturbation_experiment(bad, zero_perturbation(1), {std::nullopt, 1e-6, 20}),
                    NonConvergence);
}

TEST_CASE("normwise validity on random solvable instances")
{
    oracle::Rng rng(64);
    for (int trial = 0; trial < 100; ++trial) {
        const Form form = trial % 2 ? Form::TypeII : Form::TypeI;
        const AveProblem p = random_problem(rng, rng.integer(1, 10), form);
        const Perturbation d = random_componentwise(rng, p, 1e-3);
        const ExperimentRecord e = perturbation_experiment(p, d, {std::nullopt, 1e-13, 100000});
        for (const auto& v : {e.tau, e.upsilon, e.nu, e.delta})
            if (v) CHECK(e.r <= *v + 1e-9);
    }
}
