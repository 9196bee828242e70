#include "avebounds/kernels.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>
#include <random>
#include <string>

#include <omp.h>

#include "avebounds/errors.hpp"

namespace avb::kernels {

int thread_budget()
{
    if (const char* env = std::getenv("AVE_BOUNDS_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && v > 0) return static_cast<int>(v);
    }
    return omp_get_max_threads();
}

Vector vertex(Eigen::Index n, std::uint64_t index, double lo, double hi)
{
    Vector d(n);
    for (Eigen::Index i = 0; i < n; ++i) d(i) = ((index >> i) & 1U) ? hi : lo;
    return d;
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_dim(Eigen::Index n)
{
    if (n < 1 || n > kMaxVertexDim)
        throw InvalidInput("vertex enumeration supports 1 <= n <= " +
                           std::to_string(kMaxVertexDim));
}

struct Best {
    double value = -kInf;
    std::uint64_t index = std::numeric_limits<std::uint64_t>::max();

    void offer(double v, std::uint64_t k)
    {
        if (!std::isfinite(v)) v = kInf;
        if (v > value || (v == value && k < index)) {
            value = v;
            index = k;
        }
    }
};

template <typename PointFn>
Best max_impl(std::uint64_t count, const PointFn& point, const DiagonalFn& f, Exec exec)
{
    Best best;
    if (exec == Exec::Serial) {
        for (std::uint64_t k = 0; k < count; ++k) best.offer(f(point(k)), k);
        return best;
    }

    const auto total = static_cast<std::int64_t>(count);
#pragma omp parallel num_threads(thread_budget())
    {
        Best local;
#pragma omp for schedule(dynamic, 64) nowait
        for (std::int64_t k = 0; k < total; ++k) {
            const auto idx = static_cast<std::uint64_t>(k);
            local.offer(f(point(idx)), idx);
        }
#pragma omp critical(avb_kernels_max)
        best.offer(local.value, local.index);
    }
    return best;
}

struct Census {
    std::uint64_t positive = 0, negative = 0, zero = 0;
    std::uint64_t first_zero = std::numeric_limits<std::uint64_t>::max();

    void offer(double v, double tol, std::uint64_t k)
    {
        if (!std::isfinite(v) || std::abs(v) <= tol) {
            ++zero;
            if (k < first_zero) first_zero = k;
        } else if (v > 0.0) {
            ++positive;
        } else {
            ++negative;
        }
    }

    void absorb(const Census& o)
    {
        positive += o.positive;
        negative += o.negative;
        zero += o.zero;
        if (o.first_zero < first_zero) first_zero = o.first_zero;
    }
};

template <typename PointFn>
Census census_impl(std::uint64_t count, const PointFn& point, const DiagonalFn& f, double tol,
                   Exec exec)
{
    Census all;
    if (exec == Exec::Serial) {
        for (std::uint64_t k = 0; k < count; ++k) all.offer(f(point(k)), tol, k);
        return all;
    }

    const auto total = static_cast<std::int64_t>(count);
#pragma omp parallel num_threads(thread_budget())
    {
        Census local;
#pragma omp for schedule(dynamic, 64) nowait
        for (std::int64_t k = 0; k < total; ++k) {
            const auto idx = static_cast<std::uint64_t>(k);
            local.offer(f(point(idx)), tol, idx);
        }
#pragma omp critical(avb_kernels_census)
        all.absorb(local);
    }
    return all;
}

} // namespace

MaxResult max_over_vertices(Eigen::Index n, double lo, double hi, const DiagonalFn& f, Exec exec)
{
    check_dim(n);
    const std::uint64_t count = std::uint64_t{1} << n;
    const auto point = [&](std::uint64_t k) { return vertex(n, k, lo, hi); };
    const Best b = max_impl(count, point, f, exec);
    return {b.value, vertex(n, b.index, lo, hi), count};
}

MaxResult max_over_points(const Matrix& points, const DiagonalFn& f, Exec exec)
{
    const auto count = static_cast<std::uint64_t>(points.cols());
    if (count == 0) return {-kInf, Vector(), 0};
    const auto point = [&](std::uint64_t k) -> Vector {
        return points.col(static_cast<Eigen::Index>(k));
    };
    const Best b = max_impl(count, point, f, exec);
    return {b.value, points.col(static_cast<Eigen::Index>(b.index)), count};
}

MaxResult merge(const MaxResult& a, const MaxResult& b)
{
    MaxResult out = (b.value > a.value) ? b : a;
    out.evaluated = a.evaluated + b.evaluated;
    return out;
}

Matrix sample_box(Eigen::Index n, double lo, double hi, std::size_t count, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(lo, hi);
    Matrix pts(n, static_cast<Eigen::Index>(count));
    for (Eigen::Index j = 0; j < pts.cols(); ++j)
        for (Eigen::Index i = 0; i < n; ++i) pts(i, j) = dist(rng);
    return pts;
}

namespace {

SignCensus finish(const Census& c, const std::function<Vector(std::uint64_t)>& point)
{
    SignCensus out;
    out.positive = c.positive;
    out.negative = c.negative;
    out.zero = c.zero;
    if (c.zero > 0) out.first_zero = point(c.first_zero);
    return out;
}

} // namespace

SignCensus sign_census_vertices(Eigen::Index n, double lo, double hi, const DiagonalFn& f,
                                double zero_tol, Exec exec)
{
    check_dim(n);
    const std::uint64_t count = std::uint64_t{1} << n;
    const auto point = [&](std::uint64_t k) { return vertex(n, k, lo, hi); };
    return finish(census_impl(count, point, f, zero_tol, exec), point);
}

SignCensus sign_census_points(const Matrix& points, const DiagonalFn& f, double zero_tol,
                              Exec exec)
{
    const auto count = static_cast<std::uint64_t>(points.cols());
    const auto point = [&](std::uint64_t k) -> Vector {
        return points.col(static_cast<Eigen::Index>(k));
    };
    return finish(census_impl(count, point, f, zero_tol, exec), point);
}

} // namespace avb::kernels
