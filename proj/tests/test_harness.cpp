#include <doctest.h>

#include <json.hpp>
#include <algorithm>

#include "avebounds/errors.hpp"
#include "avebounds/harness.hpp"
#include "oracles.hpp"

using namespace avb;

TEST_CASE("tridiagonal generator")
{
    const LcpProblem p = gen_tridiagonal_lcp(3);
    Matrix M(3, 3);
    M << 4, -2, 0, 1, 4, -2, 0, 1, 4;
    CHECK(p.M == M);
    CHECK(p.q == Vector::Constant(3, -4.0));
    CHECK(gen_tridiagonal_lcp(2).M == M.topLeftCorner(2, 2));
    CHECK_THROWS_AS(gen_tridiagonal_lcp(1), InvalidInput);

    // strictly diagonally dominant comparison matrix
    const Matrix big = gen_tridiagonal_lcp(30).M;
    for (Eigen::Index i = 0; i < 30; ++i)
        CHECK(2 * std::abs(big(i, i)) > big.row(i).cwiseAbs().sum());
}

TEST_CASE("block generator")
{
    const LcpProblem p = gen_block_lcp(2);
    CHECK(p.M.rows() == 4);
    CHECK(p.M.diagonal() == Vector::Constant(4, 8.0));
    CHECK(p.M(0, 1) == -1.0);
    CHECK(p.M(0, 2) == -1.0);
    CHECK(p.M(0, 3) == 0.0);
    CHECK_THROWS_AS(gen_block_lcp(1), InvalidInput);

    for (Eigen::Index m : {2, 5, 15}) {
        const LcpProblem b = gen_block_lcp(m);
        CHECK(b.M == b.M.transpose());
        for (Eigen::Index i = 0; i < b.M.rows(); ++i)
            CHECK(2 * b.M(i, i) > b.M.row(i).cwiseAbs().sum());
        const Vector z = block_lcp_solution(m * m);
        CHECK((b.M * z + b.q).cwiseAbs().maxCoeff() == 0.0);
    }
    CHECK(block_lcp_solution(3) == (Vector(3) << 1, 2, 1).finished());
}

TEST_CASE("perturbation families")
{
    const Perturbation t = gen_perturbation(ExampleId::Tridiagonal, 2, 0.01);
    CHECK(t.dA.isApprox(0.01 * (Matrix(2, 2) << 2, -1, 1, 2).finished()));
    CHECK(t.dB.isApprox(0.01 * Matrix::Ones(2, 2)));
    CHECK(t.db.isApprox(Vector::Constant(2, 0.01)));
    REQUIRE(t.epsilon);
    CHECK(*t.epsilon == 0.01);

    const Perturbation b = gen_perturbation(ExampleId::BlockTridiagonal, 4, 0.02);
    Matrix dB(4, 4);
    dB << -1, 1, 0, 0, 1, -1, 1, 0, 0, 1, -1, 1, 0, 0, 1, -1;
    CHECK(b.dB.isApprox(0.02 * dB));
    CHECK(b.dA(1, 0) == doctest::Approx(-0.02));
    CHECK(b.dA(0, 0) == doctest::Approx(0.04));

    const Perturbation z = gen_perturbation(ExampleId::Tridiagonal, 3, 0.0);
    CHECK(z.dA == Matrix::Zero(3, 3));
    CHECK_THROWS_AS(gen_perturbation(ExampleId::File, 3, 0.01), InvalidInput);
}

TEST_CASE("example names")
{
    for (ExampleId e : {ExampleId::Tridiagonal, ExampleId::BlockTridiagonal, ExampleId::File})
        CHECK(parse_example(to_string(e)) == e);
    CHECK(parse_example("tridiag") == ExampleId::Tridiagonal);
    CHECK_THROWS_AS(parse_example("nope"), InvalidInput);
    CHECK(parse_format("csv") == Format::Csv);
    CHECK_THROWS_AS(parse_format("xml"), InvalidInput);
}

TEST_CASE("spec validation and presets")
{
    ExperimentSpec s;
    CHECK_THROWS_AS(s.validate(), InvalidInput);
    s.sizes = {1};
    CHECK_THROWS_AS(s.validate(), InvalidInput);
    s.sizes = {4};
    s.epsilons = {0.01, -0.01};
    CHECK_THROWS_AS(s.validate(), InvalidInput);
    s.example = ExampleId::File;
    s.epsilons = {0.01};
    CHECK_THROWS_AS(s.validate(), InvalidInput);

    CHECK(table_preset(1).sizes == std::vector<Eigen::Index>{30});
    CHECK(table_preset(4).example == ExampleId::BlockTridiagonal);
    CHECK(table_preset(3).epsilons.size() == 5);
    CHECK_THROWS_AS(table_preset(5), InvalidInput);
}

TEST_CASE("empty epsilon list gives an empty table")
{
    ExperimentSpec s;
    s.sizes = {10};
    const TableOutput t = run_experiment(s);
    CHECK(t.rows.empty());
    CHECK(emit(t, Format::Csv) == "n,epsilon,r,w,tau,upsilon,nu,delta,error\n");
}

TEST_CASE("grid rows are ordered and deterministic")
{
    ExperimentSpec s;
    s.sizes = {8, 12};
    s.epsilons = {0.02, 0.01};
    const TableOutput a = run_experiment(s);
    REQUIRE(a.rows.size() == 4);
    CHECK(a.rows[0].record.n == 8);
    CHECK(a.rows[0].record.epsilon == 0.02);
    CHECK(a.rows[3].record.n == 12);
    for (Format f : {Format::Csv, Format::Json, Format::Markdown})
        CHECK(emit(a, f) == emit(run_experiment(s), f));

    // one row computed alone matches its grid entry
    ExperimentSpec one = s;
    one.sizes = {12};
    one.epsilons = {0.01};
    CHECK(run_experiment(one).rows[0].record.r == a.rows[3].record.r);
}

TEST_CASE("row failures are captured, not thrown")
{
    // x = 2|x| + 1 diverges
    ExperimentSpec s;
    s.example = ExampleId::File;
    s.problem = AveProblem(Matrix::Identity(3, 3), 2 * Matrix::Identity(3, 3), Vector::Ones(3));
    s.sizes = {3};
    s.epsilons = {0.01};
    s.solve.max_iterations = 30;
    const TableOutput t = run_experiment(s);
    REQUIRE(t.rows.size() == 1);
    CHECK(t.rows[0].error);
    const std::string csv = emit(t, Format::Csv);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 2);
}

TEST_CASE("json and markdown layout")
{
    ExperimentSpec s;
    s.sizes = {10};
    s.epsilons = {0.01};
    const TableOutput t = run_experiment(s);
    const auto j = nlohmann::json::parse(emit(t, Format::Json));
    CHECK(j["example"] == "tridiagonal");
    REQUIRE(j["rows"].size() == 1);
    for (const char* key : {"n", "epsilon", "r", "w", "tau", "upsilon", "nu", "delta"})
        CHECK(j["rows"][0].contains(key));
    CHECK(j["rows"][0]["upsilon"].is_null() == !t.rows[0].record.upsilon);

    const std::string md = emit(t, Format::Markdown);
    CHECK(md.find("### tridiagonal, n = 10") != std::string::npos);
    CHECK(md.find("| eps |") != std::string::npos);
    CHECK(md.find("| r |") != std::string::npos);
    CHECK(md.find("| delta |") != std::string::npos);
}

TEST_CASE("reference grid point for the block family")
{
    ExperimentSpec s;
    s.example = ExampleId::BlockTridiagonal;
    s.sizes = {20};
    s.epsilons = {0.01};
    const TableOutput t = run_experiment(s);
    REQUIRE_FALSE(t.rows[0].error);
    CHECK(t.rows[0].record.n == 400);
    CHECK(std::abs(t.rows[0].record.r - 0.0030) <= 1.5e-3);
    REQUIRE(t.rows[0].record.tau);
    CHECK(std::abs(*t.rows[0].record.tau - 0.2798) <= 1.5e-3);
}
