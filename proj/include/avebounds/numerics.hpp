#ifndef AVEBOUNDS_NUMERICS_HPP
#define AVEBOUNDS_NUMERICS_HPP

//
// Dense numeric primitives shared by every other module: induced norms,
// extreme singular values, Perron root, guarded inversion and the small
// elementwise helpers (comparison matrix, positive part).
//

#include <string>
#include <string_view>

#include <Eigen/Dense>

namespace avb {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Supported p-norms.
enum class Norm { One, Two, Inf };

std::string to_string(Norm p);
Norm parse_norm(std::string_view text);

/// Throws InvalidInput if any entry is NaN or infinite.
void require_finite(const Matrix& m, std::string_view what);
void require_finite(const Vector& v, std::string_view what);
void require_square(const Matrix& m, std::string_view what);

/// Induced matrix norm; the 2-norm is the largest singular value.
double norm(const Matrix& m, Norm p);
/// Vector p-norm.
double norm(const Vector& v, Norm p);

struct Singulars {
    double min;
    double max;
};

Singulars extreme_singulars(const Matrix& m);
double sigma_min(const Matrix& m);
double sigma_max(const Matrix& m);

/// Largest eigenvalue modulus of an entrywise nonnegative matrix.
/// Rejects matrices with a negative entry.
double spectral_radius_nonneg(const Matrix& m);

/// Reciprocal condition estimates below this are treated as singular.
inline constexpr double kSingularRcond = 1e-14;

/// Guarded inverse. Throws SingularMatrix when the reciprocal condition
/// estimate falls below kSingularRcond.
Matrix inverse(const Matrix& m);

/// Returns true and writes the inverse when `m` is safely invertible.
bool try_inverse(const Matrix& m, Matrix& out);

/// <M>: |m_ii| on the diagonal, -|m_ij| elsewhere.
Matrix comparison_matrix(const Matrix& m);

/// max(0, v) elementwise.
Vector positive_part(const Vector& v);

/// tridiag(sub, diag, super) of order n.
Matrix tridiag(Eigen::Index n, double sub, double diag, double super);

} // namespace avb

#endif // AVEBOUNDS_NUMERICS_HPP
