#include "avebounds/harness.hpp"

#include <cstdio>
#include <map>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "avebounds/errors.hpp"
#include "avebounds/kernels.hpp"

#ifndef AVEBOUNDS_VERSION
#define AVEBOUNDS_VERSION "0.0.0"
#endif

namespace avb {

namespace {

const std::vector<double> kPresetEpsilons = {0.01, 0.015, 0.02, 0.025, 0.03};

std::string fixed4(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    return buf;
}

std::string full(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string opt_full(const std::optional<double>& v) { return v ? full(*v) : std::string(); }

std::string opt_fixed4(const std::optional<double>& v) { return v ? fixed4(*v) : "n/a"; }

nlohmann::json opt_json(const std::optional<double>& v)
{
    return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

std::string csv_escape(const std::string& s)
{
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

AveProblem base_problem(const ExperimentSpec& spec, Eigen::Index size)
{
    switch (spec.example) {
    case ExampleId::Tridiagonal: return lcp_to_ave(gen_tridiagonal_lcp(size));
    case ExampleId::BlockTridiagonal: return lcp_to_ave(gen_block_lcp(size));
    case ExampleId::File: return *spec.problem;
    }
    throw InvalidInput("unknown example");
}

ExampleId perturbation_family(const ExperimentSpec& spec)
{
    return spec.example == ExampleId::File ? spec.file_family : spec.example;
}

void emit_markdown(const TableOutput& table, std::ostream& out)
{
    // group rows by n, keeping first-seen order
    std::vector<Eigen::Index> order;
    std::map<Eigen::Index, std::vector<const TableRow*>> groups;
    for (const auto& row : table.rows) {
        auto [it, fresh] = groups.try_emplace(row.record.n);
        if (fresh) order.push_back(row.record.n);
        it->second.push_back(&row);
    }

    bool first = true;
    for (Eigen::Index n : order) {
        const auto& rows = groups[n];
        if (!first) out << "\n";
        first = false;
        out << "### " << to_string(table.example) << ", n = " << n << "\n\n";

        out << "| eps |";
        for (const auto* r : rows) out << " " << r->record.epsilon << " |";
        out << "\n|---|";
        for (std::size_t i = 0; i < rows.size(); ++i) out << "---|";
        out << "\n";

        const auto line = [&](const char* name, auto get) {
            out << "| " << name << " |";
            for (const auto* r : rows) out << " " << (r->error ? "n/a" : get(r->record)) << " |";
            out << "\n";
        };
        line("r", [](const ExperimentRecord& e) { return fixed4(e.r); });
        line("tau", [](const ExperimentRecord& e) { return opt_fixed4(e.tau); });
        line("upsilon", [](const ExperimentRecord& e) { return opt_fixed4(e.upsilon); });
        line("nu", [](const ExperimentRecord& e) { return opt_fixed4(e.nu); });
        line("delta", [](const ExperimentRecord& e) { return opt_fixed4(e.delta); });

        for (const auto* r : rows) {
            if (r->error) out << "\n- eps = " << r->record.epsilon << ": " << *r->error;
            for (const auto& note : r->record.notes)
                out << "\n- eps = " << r->record.epsilon << ": " << note;
        }
        out << "\n";
    }
}

void emit_csv(const TableOutput& table, std::ostream& out)
{
    out << "n,epsilon,r,w,tau,upsilon,nu,delta,error\n";
    for (const auto& row : table.rows) {
        const auto& e = row.record;
        out << e.n << "," << full(e.epsilon) << ",";
        if (!row.error) out << full(e.r) << "," << full(e.w);
        else out << ",";
        out << "," << opt_full(e.tau) << "," << opt_full(e.upsilon) << "," << opt_full(e.nu)
            << "," << opt_full(e.delta) << "," << (row.error ? csv_escape(*row.error) : "")
            << "\n";
    }
}

void emit_json(const TableOutput& table, std::ostream& out)
{
    nlohmann::ordered_json doc;
    doc["example"] = to_string(table.example);
    doc["version"] = table.tool_version;
    if (table.timestamp) doc["timestamp"] = *table.timestamp;
    doc["rows"] = nlohmann::ordered_json::array();
    for (const auto& row : table.rows) {
        const auto& e = row.record;
        nlohmann::ordered_json j;
        j["n"] = e.n;
        j["epsilon"] = e.epsilon;
        j["r"] = row.error ? nlohmann::ordered_json(nullptr) : nlohmann::ordered_json(e.r);
        j["w"] = row.error ? nlohmann::ordered_json(nullptr) : nlohmann::ordered_json(e.w);
        j["tau"] = opt_json(e.tau);
        j["upsilon"] = opt_json(e.upsilon);
        j["nu"] = opt_json(e.nu);
        j["delta"] = opt_json(e.delta);
        if (row.error) j["error"] = *row.error;
        if (!e.notes.empty()) j["notes"] = e.notes;
        doc["rows"].push_back(std::move(j));
    }
    out << doc.dump(2) << "\n";
}

} // namespace

std::string version() { return AVEBOUNDS_VERSION; }

std::string to_string(ExampleId e)
{
    switch (e) {
    case ExampleId::Tridiagonal: return "tridiagonal";
    case ExampleId::BlockTridiagonal: return "block";
    case ExampleId::File: return "file";
    }
    return "?";
}

ExampleId parse_example(std::string_view text)
{
    if (text == "tridiagonal" || text == "tridiag") return ExampleId::Tridiagonal;
    if (text == "block") return ExampleId::BlockTridiagonal;
    if (text == "file") return ExampleId::File;
    throw InvalidInput("unknown example '" + std::string(text) + "' (tridiagonal, block, file)");
}

LcpProblem gen_tridiagonal_lcp(Eigen::Index n)
{
    if (n < 2) throw InvalidInput("gen_tridiagonal_lcp: n must be >= 2");
    return {tridiag(n, 1.0, 4.0, -2.0), Vector::Constant(n, -4.0)};
}

Vector block_lcp_solution(Eigen::Index n)
{
    Vector z(n);
    for (Eigen::Index i = 0; i < n; ++i) z(i) = (i % 2 == 0) ? 1.0 : 2.0;
    return z;
}

LcpProblem gen_block_lcp(Eigen::Index m)
{
    if (m < 2) throw InvalidInput("gen_block_lcp: m must be >= 2");
    const Eigen::Index n = m * m;
    const Matrix S = tridiag(m, -1.0, 4.0, -1.0);
    Matrix M = Matrix::Zero(n, n);
    for (Eigen::Index k = 0; k < m; ++k) {
        M.block(k * m, k * m, m, m) = S;
        if (k + 1 < m) {
            M.block((k + 1) * m, k * m, m, m) = -Matrix::Identity(m, m);
            M.block(k * m, (k + 1) * m, m, m) = -Matrix::Identity(m, m);
        }
    }
    M.diagonal().array() += 4.0;
    const Vector q = -M * block_lcp_solution(n);
    return {M, q};
}

Perturbation gen_perturbation(ExampleId family, Eigen::Index n, double epsilon)
{
    if (!(epsilon >= 0.0)) throw InvalidInput("gen_perturbation: epsilon must be nonnegative");
    Perturbation p;
    switch (family) {
    case ExampleId::Tridiagonal:
        p.dA = epsilon * tridiag(n, 1.0, 2.0, -1.0);
        p.dB = epsilon * tridiag(n, 1.0, 1.0, 1.0);
        break;
    case ExampleId::BlockTridiagonal:
        p.dA = epsilon * tridiag(n, -1.0, 2.0, -1.0);
        p.dB = epsilon * tridiag(n, 1.0, -1.0, 1.0);
        break;
    case ExampleId::File:
        throw InvalidInput("gen_perturbation: choose the tridiagonal or block family");
    }
    p.db = Vector::Constant(n, epsilon);
    p.epsilon = epsilon;
    return p;
}

void ExperimentSpec::validate() const
{
    if (example == ExampleId::File) {
        if (!problem) throw InvalidInput("file experiment without a problem");
        if (file_family == ExampleId::File)
            throw InvalidInput("file experiment needs the tridiagonal or block perturbation family");
    } else {
        if (sizes.empty()) throw InvalidInput("experiment needs at least one size");
        for (Eigen::Index s : sizes)
            if (s < 2) throw InvalidInput("experiment sizes must be >= 2");
    }
    for (double e : epsilons)
        if (!(e > 0.0)) throw InvalidInput("experiment epsilons must be positive");
}

ExperimentSpec table_preset(int table)
{
    ExperimentSpec spec;
    spec.epsilons = kPresetEpsilons;
    switch (table) {
    case 1: spec.example = ExampleId::Tridiagonal; spec.sizes = {30}; break;
    case 2: spec.example = ExampleId::Tridiagonal; spec.sizes = {40}; break;
    case 3: spec.example = ExampleId::BlockTridiagonal; spec.sizes = {15}; break;
    case 4: spec.example = ExampleId::BlockTridiagonal; spec.sizes = {20}; break;
    default: throw InvalidInput("table must be 1, 2, 3 or 4");
    }
    return spec;
}

TableOutput run_experiment(const ExperimentSpec& spec)
{
    spec.validate();
    TableOutput out;
    out.example = spec.example;
    out.tool_version = version();

    const std::vector<Eigen::Index> sizes =
        spec.example == ExampleId::File ? std::vector<Eigen::Index>{spec.problem->size()}
                                        : spec.sizes;
    const std::size_t ne = spec.epsilons.size();
    out.rows.resize(sizes.size() * ne);
    const auto total = static_cast<std::int64_t>(out.rows.size());

#pragma omp parallel for schedule(dynamic, 1) num_threads(kernels::thread_budget())
    for (std::int64_t k = 0; k < total; ++k) {
        const auto idx = static_cast<std::size_t>(k);
        const Eigen::Index size = sizes[idx / ne];
        const double eps = spec.epsilons[idx % ne];
        TableRow& row = out.rows[idx];
        row.record.epsilon = eps;
        try {
            const AveProblem problem = base_problem(spec, size);
            row.record.n = problem.size();
            const Perturbation pert = gen_perturbation(perturbation_family(spec), problem.size(), eps);
            row.record = perturbation_experiment(problem, pert, spec.solve, spec.norm);
        } catch (const std::exception& e) {
            row.error = e.what();
        }
    }
    return out;
}

Format parse_format(std::string_view text)
{
    if (text == "csv") return Format::Csv;
    if (text == "json") return Format::Json;
    if (text == "markdown" || text == "md") return Format::Markdown;
    throw InvalidInput("unknown format '" + std::string(text) + "' (csv, json, markdown)");
}

void emit(const TableOutput& table, Format format, std::ostream& out)
{
    switch (format) {
    case Format::Csv: emit_csv(table, out); break;
    case Format::Json: emit_json(table, out); break;
    case Format::Markdown: emit_markdown(table, out); break;
    }
}

std::string emit(const TableOutput& table, Format format)
{
    std::ostringstream os;
    emit(table, format, os);
    return os.str();
}

} // namespace avb
