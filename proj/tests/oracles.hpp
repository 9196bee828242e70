#ifndef AVEBOUNDS_TESTS_ORACLES_HPP
#define AVEBOUNDS_TESTS_ORACLES_HPP

// Reference computations used only by the tests. Each one takes a route
// different from the library: cofactor determinants, Gauss-Jordan inverses,
// Jacobi eigenvalues of the Gram matrix, power iteration.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "avebounds/numerics.hpp"

namespace oracle {

using avb::Matrix;
using avb::Vector;

inline double row_sum_norm(const Matrix& m)
{
    double best = 0.0;
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        double s = 0.0;
        for (Eigen::Index j = 0; j < m.cols(); ++j) s += std::abs(m(i, j));
        best = std::max(best, s);
    }
    return best;
}

inline double col_sum_norm(const Matrix& m) { return row_sum_norm(m.transpose()); }

// cyclic Jacobi on a symmetric matrix; returns the eigenvalues
inline std::vector<double> jacobi_eigenvalues(Matrix a)
{
    const Eigen::Index n = a.rows();
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (Eigen::Index i = 0; i < n; ++i)
            for (Eigen::Index j = i + 1; j < n; ++j) off += a(i, j) * a(i, j);
        if (off < 1e-30 * std::max(1.0, a.squaredNorm())) break;
        for (Eigen::Index p = 0; p < n; ++p) {
            for (Eigen::Index q = p + 1; q < n; ++q) {
                if (a(p, q) == 0.0) continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
                const double t = (theta >= 0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (Eigen::Index k = 0; k < n; ++k) {
                    const double akp = a(k, p), akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (Eigen::Index k = 0; k < n; ++k) {
                    const double apk = a(p, k), aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
            }
        }
    }
    std::vector<double> ev(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) ev[static_cast<std::size_t>(i)] = a(i, i);
    std::sort(ev.begin(), ev.end());
    return ev;
}

// sorted singular values from the Gram matrix
inline std::vector<double> singular_values(const Matrix& m)
{
    std::vector<double> ev = jacobi_eigenvalues(m.transpose() * m);
    for (double& v : ev) v = std::sqrt(std::max(v, 0.0));
    return ev;
}

inline double sigma_min(const Matrix& m) { return singular_values(m).front(); }
inline double sigma_max(const Matrix& m) { return singular_values(m).back(); }

inline double two_norm(const Matrix& m) { return sigma_max(m); }

inline double norm(const Matrix& m, avb::Norm p)
{
    switch (p) {
    case avb::Norm::One: return col_sum_norm(m);
    case avb::Norm::Inf: return row_sum_norm(m);
    case avb::Norm::Two: return two_norm(m);
    }
    return 0.0;
}

// Gauss-Jordan with full pivoting
inline Matrix inverse(const Matrix& m)
{
    const Eigen::Index n = m.rows();
    Matrix a = m;
    Matrix inv = Matrix::Identity(n, n);
    for (Eigen::Index c = 0; c < n; ++c) {
        Eigen::Index piv = c;
        for (Eigen::Index r = c + 1; r < n; ++r)
            if (std::abs(a(r, c)) > std::abs(a(piv, c))) piv = r;
        a.row(c).swap(a.row(piv));
        inv.row(c).swap(inv.row(piv));
        const double d = a(c, c);
        a.row(c) /= d;
        inv.row(c) /= d;
        for (Eigen::Index r = 0; r < n; ++r) {
            if (r == c) continue;
            const double f = a(r, c);
            a.row(r) -= f * a.row(c);
            inv.row(r) -= f * inv.row(c);
        }
    }
    return inv;
}

// Laplace expansion; fine for n <= 6
inline double det(const Matrix& m)
{
    const Eigen::Index n = m.rows();
    if (n == 1) return m(0, 0);
    if (n == 2) return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
    double s = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) {
        Matrix minor(n - 1, n - 1);
        for (Eigen::Index r = 1; r < n; ++r) {
            Eigen::Index cc = 0;
            for (Eigen::Index c = 0; c < n; ++c)
                if (c != j) minor(r - 1, cc++) = m(r, c);
        }
        s += ((j % 2 == 0) ? 1.0 : -1.0) * m(0, j) * det(minor);
    }
    return s;
}

// all principal minors strictly positive
inline bool is_p_matrix(const Matrix& m)
{
    const Eigen::Index n = m.rows();
    for (std::uint32_t mask = 1; mask < (1U << n); ++mask) {
        std::vector<Eigen::Index> idx;
        for (Eigen::Index i = 0; i < n; ++i)
            if (mask & (1U << i)) idx.push_back(i);
        Matrix sub(static_cast<Eigen::Index>(idx.size()), static_cast<Eigen::Index>(idx.size()));
        for (std::size_t r = 0; r < idx.size(); ++r)
            for (std::size_t c = 0; c < idx.size(); ++c)
                sub(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = m(idx[r], idx[c]);
        if (!(det(sub) > 0.0)) return false;
    }
    return true;
}

// Perron root by power iteration on I + M (primitive for irreducible M)
inline double perron_root(const Matrix& m, int iters = 20000)
{
    const Eigen::Index n = m.rows();
    if (m.cwiseAbs().maxCoeff() == 0.0) return 0.0;
    const Matrix shifted = Matrix::Identity(n, n) + m;
    Vector v = Vector::Ones(n);
    double lambda = 0.0;
    for (int k = 0; k < iters; ++k) {
        Vector w = shifted * v;
        const double nw = w.lpNorm<Eigen::Infinity>();
        w /= nw;
        const double prev = lambda;
        lambda = nw;
        v = w;
        if (k > 10 && std::abs(lambda - prev) < 1e-15 * lambda) break;
    }
    return lambda - 1.0;
}

struct Rng {
    std::mt19937_64 gen;
    explicit Rng(std::uint64_t seed) : gen(seed) {}

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(gen); }

    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen); }

    Matrix matrix(Eigen::Index r, Eigen::Index c, double lo = -1.0, double hi = 1.0)
    {
        Matrix m(r, c);
        for (Eigen::Index j = 0; j < c; ++j)
            for (Eigen::Index i = 0; i < r; ++i) m(i, j) = uniform(lo, hi);
        return m;
    }

    Vector vector(Eigen::Index n, double lo = -1.0, double hi = 1.0)
    {
        Vector v(n);
        for (Eigen::Index i = 0; i < n; ++i) v(i) = uniform(lo, hi);
        return v;
    }
};

} // namespace oracle

#endif // AVEBOUNDS_TESTS_ORACLES_HPP
