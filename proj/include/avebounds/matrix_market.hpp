#ifndef AVEBOUNDS_MATRIX_MARKET_HPP
#define AVEBOUNDS_MATRIX_MARKET_HPP

#include <filesystem>
#include <iosfwd>

#include "avebounds/numerics.hpp"

namespace avb::mm {

// Reads `coordinate` and `array` files with real or integer fields and
// general, symmetric or skew-symmetric storage.
Matrix read_matrix(std::istream& in);
Matrix read_matrix(const std::filesystem::path& path);

// A vector is any n x 1 (or 1 x n) matrix.
Vector read_vector(std::istream& in);
Vector read_vector(const std::filesystem::path& path);

// Writes the dense `array real general` format with 17 significant digits.
void write_array(std::ostream& out, const Matrix& m);
void write_array(std::ostream& out, const Vector& v);

} // namespace avb::mm

#endif // AVEBOUNDS_MATRIX_MARKET_HPP
