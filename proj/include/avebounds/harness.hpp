#ifndef AVEBOUNDS_HARNESS_HPP
#define AVEBOUNDS_HARNESS_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "avebounds/complementarity.hpp"
#include "avebounds/perturbation.hpp"
#include "avebounds/solver.hpp"

namespace avb {

/// Test problem families.
///   Tridiagonal       M = tridiag(1, 4, -2) of order n, q = -4e
///   BlockTridiagonal  M = blktridiag(-I, S, -I) + 4I with S = tridiag(-1, 4, -1)
///                     of order m, n = m^2, q = -M z* for z* = (1, 2, 1, 2, ...)
///   File              a user-supplied AVE
/// tridiag(a, b, c) always means (subdiagonal, diagonal, superdiagonal).
enum class ExampleId { Tridiagonal, BlockTridiagonal, File };

std::string to_string(ExampleId e);
ExampleId parse_example(std::string_view text);

LcpProblem gen_tridiagonal_lcp(Eigen::Index n);
LcpProblem gen_block_lcp(Eigen::Index m);

/// The alternating (1, 2, 1, 2, ...) solution of gen_block_lcp.
Vector block_lcp_solution(Eigen::Index n);

/// Perturbation families for the AVE form A = I + M, B = I - M:
///   Tridiagonal       dA = e tridiag(1, 2, -1),  dB = e tridiag(1, 1, 1),  db = e e
///   BlockTridiagonal  dA = e tridiag(-1, 2, -1), dB = e tridiag(1, -1, 1), db = e e
/// The result carries `epsilon` so the componentwise bound can be evaluated.
Perturbation gen_perturbation(ExampleId family, Eigen::Index n, double epsilon);

struct ExperimentSpec {
    ExampleId example = ExampleId::Tridiagonal;
    /// n for Tridiagonal, m (n = m^2) for BlockTridiagonal; ignored for File.
    std::vector<Eigen::Index> sizes;
    std::vector<double> epsilons;
    Norm norm = Norm::Two;
    SolveOptions solve;
    /// Used when example == File.
    std::optional<AveProblem> problem;
    /// Perturbation family applied to a File problem.
    ExampleId file_family = ExampleId::Tridiagonal;

    /// Throws InvalidInput on empty sizes, sizes < 2, epsilons <= 0, or a
    /// File spec without a problem.
    void validate() const;
};

/// The four reference grids: 1 and 2 are Tridiagonal with n = 30 and 40,
/// 3 and 4 are BlockTridiagonal with m = 15 and 20; all use
/// epsilon in {0.01, 0.015, 0.02, 0.025, 0.03}.
ExperimentSpec table_preset(int table);

struct TableRow {
    ExperimentRecord record;
    std::optional<std::string> error;   ///< set when the row could not be computed
};

struct TableOutput {
    ExampleId example = ExampleId::Tridiagonal;
    std::vector<TableRow> rows;   ///< ordered by (n, epsilon)
    std::string tool_version;
    std::optional<std::string> timestamp;
};

/// Evaluates every (size, epsilon) pair, in parallel. Errors are captured
/// per row and never abort the grid.
TableOutput run_experiment(const ExperimentSpec& spec);

enum class Format { Csv, Json, Markdown };

Format parse_format(std::string_view text);

/// Deterministic serialization. Markdown prints one table per n with the
/// epsilon grid as columns and 4 decimals; csv and json print full precision.
void emit(const TableOutput& table, Format format, std::ostream& out);
std::string emit(const TableOutput& table, Format format);

/// Library version string.
std::string version();

} // namespace avb

#endif // AVEBOUNDS_HARNESS_HPP
