#include "avebounds/numerics.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "avebounds/errors.hpp"

namespace avb {

std::string to_string(Norm p)
{
    switch (p) {
    case Norm::One: return "1";
    case Norm::Two: return "2";
    case Norm::Inf: return "inf";
    }
    return "?";
}

Norm parse_norm(std::string_view text)
{
    if (text == "1") return Norm::One;
    if (text == "2") return Norm::Two;
    if (text == "inf" || text == "Inf" || text == "INF") return Norm::Inf;
    throw InvalidInput("unsupported norm '" + std::string(text) + "' (use 1, 2 or inf)");
}

void require_finite(const Matrix& m, std::string_view what)
{
    if (!m.allFinite())
        throw InvalidInput(std::string(what) + " has a non-finite entry");
}

void require_finite(const Vector& v, std::string_view what)
{
    if (!v.allFinite())
        throw InvalidInput(std::string(what) + " has a non-finite entry");
}

void require_square(const Matrix& m, std::string_view what)
{
    if (m.rows() < 1 || m.rows() != m.cols())
        throw InvalidInput(std::string(what) + " must be square and non-empty");
}

namespace {

Eigen::VectorXd singular_values(const Matrix& m)
{
    // values only; BDCSVD falls back to Jacobi below its block size
    Eigen::BDCSVD<Matrix> svd(m);
    return svd.singularValues();
}

} // namespace

double norm(const Matrix& m, Norm p)
{
    if (m.size() == 0) return 0.0;
    switch (p) {
    case Norm::One: return m.cwiseAbs().colwise().sum().maxCoeff();
    case Norm::Inf: return m.cwiseAbs().rowwise().sum().maxCoeff();
    case Norm::Two: return singular_values(m)(0);
    }
    throw InvalidInput("unsupported norm");
}

double norm(const Vector& v, Norm p)
{
    if (v.size() == 0) return 0.0;
    switch (p) {
    case Norm::One: return v.lpNorm<1>();
    case Norm::Two: return v.norm();
    case Norm::Inf: return v.lpNorm<Eigen::Infinity>();
    }
    throw InvalidInput("unsupported norm");
}

Singulars extreme_singulars(const Matrix& m)
{
    require_square(m, "matrix");
    const Eigen::VectorXd s = singular_values(m);
    return {s(s.size() - 1), s(0)};
}

double sigma_min(const Matrix& m) { return extreme_singulars(m).min; }

double sigma_max(const Matrix& m) { return norm(m, Norm::Two); }

double spectral_radius_nonneg(const Matrix& m)
{
    require_square(m, "matrix");
    if ((m.array() < 0.0).any())
        throw InvalidInput("spectral_radius_nonneg: matrix has a negative entry");
    if (m.isZero(0.0)) return 0.0;
    if (m.rows() == 1) return m(0, 0);
    Eigen::EigenSolver<Matrix> es(m, /*computeEigenvectors=*/false);
    if (es.info() != Eigen::Success)
        throw Error("spectral_radius_nonneg: eigenvalue iteration failed");
    return es.eigenvalues().cwiseAbs().maxCoeff();
}

bool try_inverse(const Matrix& m, Matrix& out)
{
    require_square(m, "matrix");
    Eigen::PartialPivLU<Matrix> lu(m);
    const double rc = lu.rcond();
    // NaN-safe comparison: an exactly singular pivot yields NaN or 0
    if (!(rc >= kSingularRcond)) return false;
    out = lu.inverse();
    return out.allFinite();
}

Matrix inverse(const Matrix& m)
{
    Matrix out;
    if (!try_inverse(m, out))
        throw SingularMatrix("matrix is numerically singular (rcond < 1e-14)");
    return out;
}

Matrix comparison_matrix(const Matrix& m)
{
    require_square(m, "matrix");
    Matrix c = -m.cwiseAbs();
    c.diagonal() = m.diagonal().cwiseAbs();
    return c;
}

Vector positive_part(const Vector& v) { return v.cwiseMax(0.0); }

Matrix tridiag(Eigen::Index n, double sub, double diag, double super)
{
    if (n < 1) throw InvalidInput("tridiag: order must be positive");
    Matrix t = Matrix::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        t(i, i) = diag;
        if (i > 0) t(i, i - 1) = sub;
        if (i + 1 < n) t(i, i + 1) = super;
    }
    return t;
}

} // namespace avb
