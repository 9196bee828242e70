#include "avebounds/matrix_market.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>

#include "avebounds/errors.hpp"

namespace avb::mm {

namespace {

enum class Symmetry { General, Symmetric, Skew };

std::string lower(std::string s)
{
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

// next line that is neither blank nor a comment
bool next_data_line(std::istream& in, std::string& line)
{
    while (std::getline(in, line)) {
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '%') continue;
        return true;
    }
    return false;
}

} // namespace

Matrix read_matrix(std::istream& in)
{
    std::string header;
    if (!std::getline(in, header))
        throw InvalidInput("matrix market: empty input");

    std::istringstream hs(header);
    std::string banner, object, format, field, symmetry;
    hs >> banner >> object >> format >> field >> symmetry;
    if (banner != "%%MatrixMarket" || lower(object) != "matrix")
        throw InvalidInput("matrix market: missing '%%MatrixMarket matrix' banner");

    format = lower(format);
    field = lower(field);
    symmetry = lower(symmetry);
    if (field != "real" && field != "integer" && field != "double")
        throw InvalidInput("matrix market: unsupported field '" + field + "'");

    Symmetry sym = Symmetry::General;
    if (symmetry == "symmetric") sym = Symmetry::Symmetric;
    else if (symmetry == "skew-symmetric") sym = Symmetry::Skew;
    else if (symmetry != "general")
        throw InvalidInput("matrix market: unsupported symmetry '" + symmetry + "'");

    std::string line;
    if (!next_data_line(in, line))
        throw InvalidInput("matrix market: missing size line");
    std::istringstream sz(line);

    long rows = 0, cols = 0;
    Matrix m;
    if (format == "coordinate") {
        long nnz = 0;
        if (!(sz >> rows >> cols >> nnz) || rows < 1 || cols < 1 || nnz < 0)
            throw InvalidInput("matrix market: bad coordinate size line");
        m = Matrix::Zero(rows, cols);
        for (long k = 0; k < nnz; ++k) {
            if (!next_data_line(in, line))
                throw InvalidInput("matrix market: truncated coordinate data");
            std::istringstream es(line);
            long i = 0, j = 0;
            double v = 0.0;
            if (!(es >> i >> j >> v) || i < 1 || j < 1 || i > rows || j > cols)
                throw InvalidInput("matrix market: bad entry '" + line + "'");
            m(i - 1, j - 1) = v;
            if (i != j) {
                if (sym == Symmetry::Symmetric) m(j - 1, i - 1) = v;
                else if (sym == Symmetry::Skew) m(j - 1, i - 1) = -v;
            }
        }
    } else if (format == "array") {
        if (!(sz >> rows >> cols) || rows < 1 || cols < 1)
            throw InvalidInput("matrix market: bad array size line");
        m = Matrix::Zero(rows, cols);
        // column-major; symmetric storage lists the lower triangle only
        for (long j = 0; j < cols; ++j) {
            const long start = (sym == Symmetry::General) ? 0 : (sym == Symmetry::Skew ? j + 1 : j);
            for (long i = start; i < rows; ++i) {
                if (!next_data_line(in, line))
                    throw InvalidInput("matrix market: truncated array data");
                std::istringstream es(line);
                double v = 0.0;
                if (!(es >> v)) throw InvalidInput("matrix market: bad value '" + line + "'");
                m(i, j) = v;
                if (i != j) {
                    if (sym == Symmetry::Symmetric) m(j, i) = v;
                    else if (sym == Symmetry::Skew) m(j, i) = -v;
                }
            }
        }
    } else {
        throw InvalidInput("matrix market: unsupported format '" + format + "'");
    }

    require_finite(m, "matrix market input");
    return m;
}

Matrix read_matrix(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot open '" + path.string() + "'");
    return read_matrix(in);
}

Vector read_vector(std::istream& in)
{
    Matrix m = read_matrix(in);
    if (m.cols() == 1) return m.col(0);
    if (m.rows() == 1) return m.row(0).transpose();
    throw InvalidInput("matrix market: expected a vector (n x 1), got " +
                       std::to_string(m.rows()) + " x " + std::to_string(m.cols()));
}

Vector read_vector(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot open '" + path.string() + "'");
    return read_vector(in);
}

void write_array(std::ostream& out, const Matrix& m)
{
    out << "%%MatrixMarket matrix array real general\n";
    out << m.rows() << ' ' << m.cols() << '\n';
    out << std::setprecision(17);
    for (Eigen::Index j = 0; j < m.cols(); ++j)
        for (Eigen::Index i = 0; i < m.rows(); ++i) out << m(i, j) << '\n';
}

void write_array(std::ostream& out, const Vector& v)
{
    write_array(out, Matrix(v));
}

} // namespace avb::mm
