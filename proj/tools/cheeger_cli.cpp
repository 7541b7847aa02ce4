// cheeger: command line front end for the isoperimetric / functional inequality toolkit.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cheeger/config.hpp"
#include "cheeger/errors.hpp"
#include "cheeger/expr.hpp"
#include "cheeger/inequalities.hpp"
#include "cheeger/isoperimetry.hpp"
#include "cheeger/report.hpp"
#include "cheeger/runner.hpp"

using namespace cheeger;

namespace {

struct Common {
    std::vector<std::string> measures;
    std::string format = "csv";
    std::string output;
    double tol = 1e-6;
    double qtol = 1e-9;
};

void add_common(CLI::App* sub, Common& c, bool measure_required = true)
{
    auto* opt = sub->add_option("-m,--measure", c.measures, "measure spec, e.g. laplace:0,1 or tabulated:file.txt");
    if (measure_required) opt->required();
    sub->add_option("--format", c.format, "report format")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("-o,--output", c.output, "report path (default: stdout)");
    sub->add_option("--tol", c.tol, "relative pass tolerance")->check(CLI::Range(0.0, 1.0));
    sub->add_option("--qtol", c.qtol, "relative quadrature tolerance")->check(CLI::Range(1e-13, 1e-3));
}

std::vector<MeasureEntry> measures_of(const Common& c)
{
    std::vector<MeasureEntry> out;
    std::vector<ConfigIssue> issues;
    for (std::size_t i = 0; i < c.measures.size(); ++i) {
        try {
            out.push_back({c.measures[i], parse_measure_spec(c.measures[i])});
        } catch (const std::exception& e) {
            issues.push_back({"--measure " + c.measures[i], e.what()});
        }
    }
    if (!issues.empty()) throw ConfigError(std::move(issues));
    return out;
}

void apply_common(RunConfig& cfg, const Common& c)
{
    cfg.format = c.format;
    cfg.output_path = c.output;
    cfg.pass_tolerance = c.tol;
    cfg.quadrature_tolerance = c.qtol;
}

int execute(const RunConfig& cfg)
{
    const auto result = run(cfg);
    if (!write_report(cfg, result, std::cout)) {
        std::cerr << "error: cannot write report to " << cfg.output_path << "\n";
        return exit_config_error;
    }
    for (const auto& row : result.rows)
        if (row.status == "fail" || row.status == "numerical_failure")
            std::cerr << row.status << ": " << row.name << " " << row.family << " " << params_string(row)
                      << (row.message.empty() ? "" : " (" + row.message + ")") << "\n";
    return result.exit_code;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Isoperimetric constants, covariance kernels and functional inequality certificates"};
    app.require_subcommand(1);
    app.fallthrough();
    std::uint64_t seed = 0;
    double rhs_scale = 1.0;
    app.add_option("--seed", seed, "seed of the random piecewise-linear function battery");
    app.add_option("--debug-rhs-scale", rhs_scale, "debug: multiply every bound by this factor")
        ->check(CLI::PositiveNumber);

    // iso
    Common iso_c;
    int grid = default_iso_grid_size;
    std::string profile_path;
    auto* iso = app.add_subcommand("iso", "print the isoperimetric constant and optionally the profile CSV");
    iso->add_option("-m,--measure", iso_c.measures, "measure spec")->required()->expected(1);
    iso->add_option("--grid", grid, "quantile grid size")->check(CLI::Range(64, 1 << 20));
    iso->add_option("--profile", profile_path, "write the ratio profile as CSV ('-' for stdout)");

    // verify
    Common ver_c;
    std::string config_path;
    std::vector<std::string> ver_functions, ver_checks;
    int random_functions = -1;
    auto* verify = app.add_subcommand("verify", "run a certificate suite (config file or built-in default)");
    add_common(verify, ver_c, false);
    verify->add_option("-c,--config", config_path, "JSON run configuration");
    verify->add_option("-f,--function", ver_functions, "test function expression (repeatable)");
    verify->add_option("--check", ver_checks, "restrict the default suite to these checks (repeatable)");
    verify->add_option("--random-functions", random_functions, "number of random piecewise-linear functions")
        ->check(CLI::Range(0, 64));

    // hardy
    Common hardy_c;
    std::vector<double> hardy_p{1.5, 2.0, 3.0, 5.0}, hardy_k;
    std::vector<std::string> hardy_h{"x", "x^3", "sgnpow(1.5)", "ramp(0,0.5)"};
    auto* hardy = app.add_subcommand("hardy", "Hardy inequality sweep for the T_k transform");
    add_common(hardy, hardy_c);
    hardy->add_option("--p", hardy_p, "exponents p > 1")->delimiter(',');
    hardy->add_option("--k", hardy_k, "split points (default: median)")->delimiter(',');
    hardy->add_option("-f,--function", hardy_h, "functions h (repeatable)");

    // best-constant
    Common best_c;
    std::string best_g;
    std::vector<double> deltas{1e-1, 1e-2, 1e-3};
    auto* best = app.add_subcommand("best-constant", "estimate the L1-Linf covariance constant by ramp sequences");
    best->add_option("-m,--measure", best_c.measures, "measure spec")->required()->expected(1);
    best->add_option("--g", best_g, "strictly increasing g (default: extremal pair g = h = ramp)");
    best->add_option("--deltas", deltas, "decreasing ramp widths")->delimiter(',');

    // sharpness
    Common sharp_c;
    std::vector<double> sharp_p{2.0}, sharp_k{1, 3, 5};
    std::string sharp_variant = "centered_p";
    auto* sharp = app.add_subcommand("sharpness", "Lp-Poincare ratios for monomials x^k");
    add_common(sharp, sharp_c);
    sharp->add_option("--p", sharp_p, "exponents p >= 1")->delimiter(',');
    sharp->add_option("--k", sharp_k, "monomial degrees")->delimiter(',');
    sharp->add_option("--variant", sharp_variant, "Poincare variant")
        ->check(CLI::IsMember({"centered_2p", "centered_p", "raw_2p", "raw_p"}));

    // moments
    Common mom_c;
    std::vector<double> mom_p{2.0};
    auto* moments = app.add_subcommand("moments", "moment growth, psi1, moment comparison and C_p suite");
    add_common(moments, mom_c);
    moments->add_option("--p", mom_p, "exponents")->delimiter(',');

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        if (code == 0) return 0;
        if (e.get_name() != "CallForHelp") std::cerr << app.help();
        return exit_config_error;
    }

    try {
        if (*iso) {
            const auto m = measures_of(iso_c).front().measure;
            const auto profile = isoperimetric_constant(m, grid);
            std::printf("%.6f\n", profile.is_value);
            if (profile.diverging_tail) std::fprintf(stderr, "note: ratio decreases without bound in a tail\n");
            if (!profile_path.empty()) {
                if (profile_path == "-") {
                    write_profile_csv(std::cout, profile);
                } else {
                    std::ofstream out(profile_path);
                    if (!out) {
                        std::cerr << "error: cannot write " << profile_path << "\n";
                        return exit_config_error;
                    }
                    write_profile_csv(out, profile);
                }
            }
            return exit_ok;
        }

        if (*best) {
            const auto m = measures_of(best_c).front().measure;
            std::optional<DifferentiableFunction> g;
            if (!best_g.empty()) g = parse_function(best_g, m);
            const auto est = estimate_best_constant(m, g, deltas);
            std::printf("delta,ratio\n");
            for (std::size_t i = 0; i < est.deltas.size(); ++i) std::printf("%.10g,%.10g\n", est.deltas[i], est.ratios[i]);
            std::printf("limit_estimate,%s\ntarget,%s\nmonotone,%s\n", format_number(est.limit_estimate).c_str(),
                        format_number(est.target).c_str(), est.monotone ? "true" : "false");
            bool bounded = true;
            for (double r : est.ratios) bounded = bounded && r <= est.target * (1.0 + 1e-6);
            return est.monotone && bounded ? exit_ok : exit_certificate_failure;
        }

        RunConfig cfg;
        if (*verify) {
            if (!config_path.empty()) {
                cfg = load_config(config_path);
                if (!ver_c.measures.empty()) cfg.measures = measures_of(ver_c);
                if (verify->count("--format")) cfg.format = ver_c.format;
                if (verify->count("--output")) cfg.output_path = ver_c.output;
                if (verify->count("--tol")) cfg.pass_tolerance = ver_c.tol;
                if (verify->count("--qtol")) cfg.quadrature_tolerance = ver_c.qtol;
            } else {
                if (ver_c.measures.empty()) ver_c.measures = {"laplace:0,1"};
                cfg = default_config(measures_of(ver_c));
                apply_common(cfg, ver_c);
                if (!ver_checks.empty()) {
                    std::vector<ConfigIssue> issues;
                    cfg.checks.clear();
                    for (const auto& name : ver_checks) {
                        const auto& known = known_checks();
                        if (std::find(known.begin(), known.end(), name) == known.end())
                            issues.push_back({"--check " + name, "unknown check; did you mean '" + nearest_check(name) + "'?"});
                        cfg.checks.push_back({.name = name, .location = "--check " + name});
                    }
                    if (!issues.empty()) throw ConfigError(std::move(issues));
                }
            }
            if (!ver_functions.empty()) {
                for (const auto& f : ver_functions) (void)Expression::parse(f);
                cfg.functions = ver_functions;
            }
            if (random_functions >= 0) cfg.random_functions = random_functions;
            if (app.count("--seed")) cfg.seed = seed;
        } else if (*hardy) {
            cfg.measures = measures_of(hardy_c);
            apply_common(cfg, hardy_c);
            for (const auto& f : hardy_h) (void)Expression::parse(f);
            cfg.functions = hardy_h;
            cfg.checks.push_back({.name = "hardy", .p = hardy_p, .k = hardy_k, .location = "hardy"});
            cfg.isoperimetric_rows = false;
            cfg.seed = seed;
        } else if (*sharp) {
            cfg.measures = measures_of(sharp_c);
            apply_common(cfg, sharp_c);
            cfg.checks.push_back(
                {.name = "sharpness", .p = sharp_p, .k = sharp_k, .variant = {sharp_variant}, .location = "sharpness"});
            cfg.isoperimetric_rows = false;
        } else if (*moments) {
            cfg.measures = measures_of(mom_c);
            apply_common(cfg, mom_c);
            for (const char* name : {"moment_growth", "moment_comparison", "logconcave_moments"})
                cfg.checks.push_back({.name = name, .p = mom_p, .location = name});
            cfg.checks.push_back({.name = "psi1_bound", .location = "psi1_bound"});
            cfg.checks.push_back({.name = "cp_sequence", .location = "cp_sequence"});
        }
        cfg.rhs_scale = rhs_scale;
        return execute(cfg);
    } catch (const ConfigError& e) {
        std::cerr << e.what() << "\n";
        return exit_config_error;
    } catch (const ExpressionError& e) {
        std::cerr << "error: malformed expression: " << e.what() << "\n";
        return exit_config_error;
    } catch (const IngestionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_config_error;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_config_error;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return exit_numerical_failure;
    }
}
