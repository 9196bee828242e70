// avebounds: command-line front end.
//
// Exit status: 0 ok, 1 bad input or other error, 2 a bound is inapplicable,
// 3 a solve did not converge.

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "avebounds/avebounds.hpp"

namespace {

using avb::Matrix;
using avb::Vector;
using json = nlohmann::ordered_json;

enum Exit { kOk = 0, kFailure = 1, kInapplicable = 2, kNoConvergence = 3 };

struct Common {
    std::vector<std::string> inputs;
    std::string format = "json";
    std::string norm = "2";
    std::string form = "I";
    double tol = 1e-6;
    std::size_t max_iter = 10000;
};

void add_common(CLI::App* app, Common& c, const std::string& input_help)
{
    app->add_option("--input", c.inputs, input_help)->take_all();
    app->add_option("--format", c.format, "csv, json or markdown")->capture_default_str();
    app->add_option("--norm", c.norm, "1, 2 or inf")->capture_default_str();
    app->add_option("--tol", c.tol, "stopping tolerance on the step 2-norm")->capture_default_str();
    app->add_option("--max-iter", c.max_iter, "iteration cap")->capture_default_str();
}

avb::SolveOptions solve_options(const Common& c)
{
    avb::SolveOptions o;
    o.tolerance = c.tol;
    o.max_iterations = c.max_iter;
    return o;
}

avb::Form parse_form(const std::string& s)
{
    if (s == "I" || s == "1") return avb::Form::TypeI;
    if (s == "II" || s == "2") return avb::Form::TypeII;
    throw avb::InvalidInput("form must be I or II");
}

void need_inputs(const Common& c, std::size_t k, const char* what)
{
    if (c.inputs.size() != k)
        throw avb::InvalidInput(std::string("expected --input ") + what);
}

json vec(const Vector& v) { return json(std::vector<double>(v.data(), v.data() + v.size())); }

// flattens nested objects/arrays into dotted keys
void flatten(const json& j, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& out)
{
    if (j.is_object()) {
        for (auto it = j.begin(); it != j.end(); ++it)
            flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
    } else if (j.is_array()) {
        for (std::size_t i = 0; i < j.size(); ++i)
            flatten(j[i], prefix + "[" + std::to_string(i) + "]", out);
    } else if (j.is_string()) {
        out.emplace_back(prefix, j.get<std::string>());
    } else {
        out.emplace_back(prefix, j.dump());
    }
}

void print(const json& doc, const std::string& format)
{
    const avb::Format f = avb::parse_format(format);
    if (f == avb::Format::Json) {
        std::cout << doc.dump(2) << "\n";
        return;
    }
    std::vector<std::pair<std::string, std::string>> rows;
    flatten(doc, "", rows);
    if (f == avb::Format::Csv) {
        std::cout << "key,value\n";
        for (const auto& [k, v] : rows) std::cout << k << "," << v << "\n";
    } else {
        std::cout << "| key | value |\n|---|---|\n";
        for (const auto& [k, v] : rows) std::cout << "| " << k << " | " << v << " |\n";
    }
}

json solve_json(const avb::SolveResult& r)
{
    return {{"converged", r.converged},
            {"iterations", r.iterations},
            {"final_step_norm", r.final_step_norm},
            {"residual_norm", r.final_residual_norm},
            {"x", vec(r.x)}};
}

json report_json(const avb::ErrorBoundReport& rep)
{
    json j;
    j["norm"] = avb::to_string(rep.p);
    j["lower_factor"] = rep.lower_factor;
    j["upper_factors"] = json::array();
    for (const auto& f : rep.upper_factors) {
        json e{{"method", avb::to_string(f.method)}, {"applicable", f.applicable}};
        if (f.applicable) e["value"] = f.value;
        else e["reason"] = f.reason;
        j["upper_factors"].push_back(e);
    }
    if (rep.chen_lower) {
        j["unit_b_lower"] = *rep.chen_lower;
        j["unit_b_upper"] = *rep.chen_upper;
    }
    return j;
}

avb::AveProblem read_ave(const Common& c, std::size_t first)
{
    return avb::AveProblem(avb::mm::read_matrix(c.inputs[first]),
                           avb::mm::read_matrix(c.inputs[first + 1]),
                           avb::mm::read_vector(c.inputs[first + 2]), parse_form(c.form));
}

int cmd_solve(const Common& c)
{
    need_inputs(c, 3, "A, B, b");
    const avb::AveProblem problem = read_ave(c, 0);
    const avb::SolveResult r = avb::picard_solve(problem, solve_options(c));
    print(solve_json(r), c.format);
    return r.converged ? kOk : kNoConvergence;
}

int cmd_bounds(const Common& c, const std::string& x_path)
{
    need_inputs(c, 3, "A, B, b");
    const avb::AveProblem problem = read_ave(c, 0);
    const avb::Norm p = avb::parse_norm(c.norm);

    json doc;
    const avb::SolvabilityReport sr = avb::solvability_report(problem);
    doc["solvability"] = {{"verdict", avb::to_string(sr.verdict)}, {"note", sr.note}};
    for (const auto& ck : sr.checks)
        doc["solvability"]["checks"].push_back(
            {{"name", ck.name}, {"value", ck.value}, {"threshold", ck.threshold}, {"passed", ck.passed}});
    const avb::ErrorBoundReport rep = avb::error_bound_report(problem, p);
    doc["bounds"] = report_json(rep);

    if (!x_path.empty()) {
        const avb::ErrorInterval iv = avb::error_interval(problem, avb::mm::read_vector(x_path), p);
        doc["interval"] = {{"residual_norm", iv.residual_norm},
                           {"lower", iv.lower},
                           {"upper", iv.upper},
                           {"upper_method", avb::to_string(iv.upper_method)}};
    }
    print(doc, c.format);
    return rep.best_upper() ? kOk : kInapplicable;
}

int emit_table(const avb::TableOutput& t, const std::string& format)
{
    avb::emit(t, avb::parse_format(format), std::cout);
    return kOk;
}

int cmd_perturb(const Common& c, const std::string& example, std::vector<long>& sizes,
                std::vector<double>& epsilons)
{
    const avb::Norm p = avb::parse_norm(c.norm);
    if (!example.empty()) {
        avb::ExperimentSpec spec;
        spec.example = avb::parse_example(example);
        spec.norm = p;
        spec.solve = solve_options(c);
        spec.epsilons = epsilons;
        if (spec.example == avb::ExampleId::File)
            throw avb::InvalidInput("use --input for file problems");
        for (long s : sizes) spec.sizes.push_back(static_cast<Eigen::Index>(s));
        return emit_table(avb::run_experiment(spec), c.format);
    }

    need_inputs(c, 6, "A, B, b, dA, dB, db");
    const avb::AveProblem problem = read_ave(c, 0);
    avb::Perturbation pert{avb::mm::read_matrix(c.inputs[3]), avb::mm::read_matrix(c.inputs[4]),
                           avb::mm::read_vector(c.inputs[5]), std::nullopt};
    if (epsilons.size() > 1) throw avb::InvalidInput("give at most one --epsilon with --input");
    if (!epsilons.empty()) pert.epsilon = epsilons.front();

    avb::TableOutput t;
    t.example = avb::ExampleId::File;
    t.tool_version = avb::version();
    t.rows.push_back({avb::perturbation_experiment(problem, pert, solve_options(c), p), {}});
    const auto& rec = t.rows.front().record;
    emit_table(t, c.format);
    return (rec.tau || rec.upsilon || rec.nu || rec.delta) ? kOk : kInapplicable;
}

int cmd_lcp(const Common& c)
{
    need_inputs(c, 2, "M, q");
    const avb::LcpProblem lcp{avb::mm::read_matrix(c.inputs[0]), avb::mm::read_vector(c.inputs[1])};
    const avb::Norm p = avb::parse_norm(c.norm);
    const avb::AveProblem ave = avb::lcp_to_ave(lcp);
    const avb::SolveResult r = avb::picard_solve(ave, solve_options(c));
    const avb::ComplementaritySolution s = avb::recover_solution(r.x, avb::Recovery::Shifted);

    json doc;
    doc["solve"] = solve_json(r);
    doc["z"] = vec(s.z);
    doc["w"] = vec(s.w);
    doc["gap"] = s.gap;
    doc["min_residual_inf"] = avb::lcp_min_residual(lcp, s.z).lpNorm<Eigen::Infinity>();
    doc["bounds"] = report_json(avb::error_bound_report(ave, p));
    try {
        doc["hmatrix_bound"] = avb::lcp_chen06_bound(lcp.M, p);
    } catch (const avb::Inapplicable& e) {
        doc["hmatrix_bound"] = nullptr;
        doc["hmatrix_bound_reason"] = e.condition();
    }
    print(doc, c.format);
    return r.converged ? kOk : kNoConvergence;
}

int cmd_hlcp(const Common& c)
{
    need_inputs(c, 3, "M, N, q");
    const avb::HlcpProblem h{avb::mm::read_matrix(c.inputs[0]), avb::mm::read_matrix(c.inputs[1]),
                             avb::mm::read_vector(c.inputs[2])};
    const avb::Norm p = avb::parse_norm(c.norm);
    const avb::AveProblem ave = avb::hlcp_to_ave(h);

    json doc;
    if (ave.size() <= avb::kDefaultExhaustiveLimit)
        doc["column_w_property"] = avb::column_w_property(h);
    else
        doc["column_w_property"] = nullptr;

    const avb::SolveResult r = avb::picard_solve(ave, solve_options(c));
    const avb::ComplementaritySolution s = avb::recover_solution(r.x, avb::Recovery::Halved);
    doc["solve"] = solve_json(r);
    doc["z"] = vec(s.z);
    doc["w"] = vec(s.w);
    doc["gap"] = s.gap;
    doc["bounds"] = report_json(avb::hlcp_error_bounds(h, p));
    print(doc, c.format);
    return r.converged ? kOk : kNoConvergence;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Error and perturbation bounds for absolute value equations"};
    app.require_subcommand(1);
    app.set_version_flag("--version", avb::version());

    Common solve_c, bounds_c, perturb_c, lcp_c, hlcp_c;
    std::string x_path, example;
    std::vector<long> sizes;
    std::vector<double> epsilons;
    int table = 0;
    std::string reproduce_format = "markdown";

    auto* solve = app.add_subcommand("solve", "solve Ax - B|x| = b by Picard iteration");
    add_common(solve, solve_c, "A, B, b (Matrix Market, in that order)");
    solve->add_option("--form", solve_c.form, "I: Ax - B|x| = b, II: Ax - |Bx| = b");

    auto* bounds = app.add_subcommand("bounds", "solvability checks and error-bound factors");
    add_common(bounds, bounds_c, "A, B, b (Matrix Market, in that order)");
    bounds->add_option("--form", bounds_c.form, "I or II");
    bounds->add_option("--x", x_path, "approximate solution to bracket");

    auto* perturb = app.add_subcommand("perturb", "relative perturbation bounds");
    add_common(perturb, perturb_c, "A, B, b, dA, dB, db (Matrix Market, in that order)");
    perturb->add_option("--form", perturb_c.form, "I or II");
    perturb->add_option("--example", example, "tridiagonal or block (instead of --input)");
    perturb->add_option("--n", sizes, "n for tridiagonal, m (n = m^2) for block")->take_all();
    perturb->add_option("--epsilon", epsilons, "perturbation magnitudes")->take_all();

    auto* lcp = app.add_subcommand("lcp", "solve an LCP through its AVE form");
    add_common(lcp, lcp_c, "M, q (Matrix Market, in that order)");

    auto* hlcp = app.add_subcommand("hlcp", "solve a horizontal LCP through its AVE form");
    add_common(hlcp, hlcp_c, "M, N, q (Matrix Market, in that order)");

    auto* reproduce = app.add_subcommand("reproduce", "run a reference perturbation grid");
    reproduce->add_option("--table", table, "1, 2, 3 or 4")->required()->check(CLI::Range(1, 4));
    reproduce->add_option("--format", reproduce_format, "csv, json or markdown")->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*solve) return cmd_solve(solve_c);
        if (*bounds) return cmd_bounds(bounds_c, x_path);
        if (*perturb) return cmd_perturb(perturb_c, example, sizes, epsilons);
        if (*lcp) return cmd_lcp(lcp_c);
        if (*hlcp) return cmd_hlcp(hlcp_c);
        if (*reproduce) return emit_table(avb::run_experiment(avb::table_preset(table)), reproduce_format);
    } catch (const avb::Inapplicable& e) {
        std::cerr << "avebounds: " << e.what() << "\n";
        return kInapplicable;
    } catch (const avb::Inconclusive& e) {
        std::cerr << "avebounds: " << e.what() << "\n";
        return kInapplicable;
    } catch (const avb::NonConvergence& e) {
        std::cerr << "avebounds: " << e.what() << "\n";
        return kNoConvergence;
    } catch (const std::exception& e) {
        std::cerr << "avebounds: " << e.what() << "\n";
        return kFailure;
    }
    return kFailure;
}
