#ifndef AVEBOUNDS_KERNELS_HPP
#define AVEBOUNDS_KERNELS_HPP

//
// Enumeration kernels over diagonal matrices drawn from a box [lo, hi]^n.
//
// Every kernel has a serial reference path and an OpenMP path selected by
// `Exec`. Both paths visit the same points and break ties towards the lowest
// index, so their results are identical; tests compare them directly.
//
// The callback receives the diagonal as a vector and returns a scalar. For
// the max kernels a non-finite return marks the point as singular.
//

#include <cstdint>
#include <functional>

#include "avebounds/numerics.hpp"

namespace avb::kernels {

enum class Exec { Serial, Parallel };

/// Threads used by the parallel path: AVE_BOUNDS_THREADS when set and
/// positive, otherwise the OpenMP default.
int thread_budget();

using DiagonalFn = std::function<double(const Vector&)>;

/// Largest vertex count the kernels accept (2^kMaxVertexDim points).
inline constexpr Eigen::Index kMaxVertexDim = 30;

/// Diagonal of vertex `index`: bit i selects `hi` for coordinate i.
Vector vertex(Eigen::Index n, std::uint64_t index, double lo, double hi);

struct MaxResult {
    double value = 0.0;     ///< +inf when some point was singular
    Vector argmax;          ///< diagonal attaining `value` (first singular point if any)
    std::uint64_t evaluated = 0;
};

MaxResult max_over_vertices(Eigen::Index n, double lo, double hi, const DiagonalFn& f,
                            Exec exec = Exec::Parallel);

/// Each column of `points` is one diagonal.
MaxResult max_over_points(const Matrix& points, const DiagonalFn& f,
                          Exec exec = Exec::Parallel);

/// Merges two results (larger value wins; ties keep `a`).
MaxResult merge(const MaxResult& a, const MaxResult& b);

/// `count` uniform samples from [lo, hi]^n as columns, reproducible from `seed`.
Matrix sample_box(Eigen::Index n, double lo, double hi, std::size_t count,
                  std::uint64_t seed);

struct SignCensus {
    std::uint64_t positive = 0;
    std::uint64_t negative = 0;
    std::uint64_t zero = 0;          ///< |value| <= zero_tol or non-finite
    Vector first_zero;               ///< lowest-index zero point, empty if none

    bool one_strict_sign() const { return zero == 0 && (positive == 0 || negative == 0); }
};

SignCensus sign_census_vertices(Eigen::Index n, double lo, double hi, const DiagonalFn& f,
                                double zero_tol, Exec exec = Exec::Parallel);

SignCensus sign_census_points(const Matrix& points, const DiagonalFn& f, double zero_tol,
                              Exec exec = Exec::Parallel);

} // namespace avb::kernels

#endif // AVEBOUNDS_KERNELS_HPP
