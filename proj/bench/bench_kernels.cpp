// Serial vs OpenMP paths of the exhaustive kernels.
#include <benchmark/benchmark.h>

#include "avebounds/ave.hpp"
#include "avebounds/complementarity.hpp"
#include "avebounds/error_bounds.hpp"

using namespace avb;

namespace {

AveProblem make_problem(Eigen::Index n)
{
    Matrix A = Matrix::Identity(n, n) * 4.0;
    Matrix B = Matrix::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        B(i, i) = 0.5;
        if (i + 1 < n) {
            A(i, i + 1) = -1.0;
            B(i + 1, i) = 0.3;
        }
    }
    return AveProblem(A, B, Vector::Ones(n));
}

void BM_BruteForceAlpha(benchmark::State& state, kernels::Exec exec)
{
    const AveProblem p = make_problem(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(brute_force_alpha(p, Norm::Two, 256, 1, exec));
    state.SetItemsProcessed(state.iterations() * ((1 << state.range(0)) + 256));
}

void BM_ColumnW(benchmark::State& state, kernels::Exec exec)
{
    const Eigen::Index n = state.range(0);
    const HlcpProblem h{make_problem(n).A(), Matrix::Identity(n, n), Vector::Ones(n)};
    for (auto _ : state) benchmark::DoNotOptimize(column_w_property(h, kDefaultExhaustiveLimit, exec));
    state.SetItemsProcessed(state.iterations() * (1 << n));
}

} // namespace

BENCHMARK_CAPTURE(BM_BruteForceAlpha, serial, kernels::Exec::Serial)->DenseRange(8, 14, 3)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_BruteForceAlpha, parallel, kernels::Exec::Parallel)->DenseRange(8, 14, 3)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_ColumnW, serial, kernels::Exec::Serial)->DenseRange(8, 14, 3)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_ColumnW, parallel, kernels::Exec::Parallel)->DenseRange(8, 14, 3)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
