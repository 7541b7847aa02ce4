#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "cheeger/measure.hpp"

namespace cheeger {

/// One requested check with its parameter grids. Empty grids mean "use the check's default".
struct CheckSpec {
    std::string name;
    std::vector<double> p;
    std::vector<double> k;     ///< split points for hardy, monomial degrees for sharpness
    std::vector<double> delta; ///< ramp widths for best_constant
    std::vector<std::string> g;
    std::vector<std::string> h;
    std::vector<std::string> variant;   ///< lp_poincare / sharpness
    std::vector<std::string> side;      ///< cov_variant
    std::vector<std::string> centering; ///< orlicz
    std::vector<std::string> young;     ///< orlicz: "x^2", "|x|^3", ...
    std::string location;               ///< field path in the config, e.g. "checks[2]"
};

struct MeasureEntry {
    std::string spec;
    Measure measure;
};

struct RunConfig {
    std::vector<MeasureEntry> measures;
    std::vector<std::string> functions;
    std::vector<CheckSpec> checks;
    double pass_tolerance = 1e-6;
    double quadrature_tolerance = 1e-9;
    std::string format = "csv";
    std::string output_path; ///< empty: standard output
    std::uint64_t seed = 0;
    int random_functions = 0;
    double rhs_scale = 1.0; ///< debug: multiplies every bound before the verdict
    bool isoperimetric_rows = true; ///< one isoperimetric_constant row per measure
};

struct ConfigIssue {
    std::string location;
    std::string message;
};

/// All problems found in a configuration, not just the first.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(std::vector<ConfigIssue> issues);
    const std::vector<ConfigIssue>& issues() const { return issues_; }

private:
    std::vector<ConfigIssue> issues_;
};

/// Check names accepted in configs.
const std::vector<std::string>& known_checks();
/// Closest known check name by edit distance.
std::string nearest_check(const std::string& name);

/// Parses "family:a,b" (laplace:0,1, gaussian:0,1, exponential:1, uniform:0,1, logistic:0,1,
/// beta:2,5[,scale]) or "tabulated:path". Relative paths resolve against base_dir.
Measure parse_measure_spec(const std::string& spec, const std::filesystem::path& base_dir = {});

/// JSON configuration:
///   { "measures": ["laplace:0,1", ...], "functions": ["x", "x^3", ...],
///     "checks": [{"name": "cheeger"}, {"name": "lp_poincare", "p": [1, 2], "variant": "centered_p"}],
///     "tolerances": {"pass": 1e-6, "quadrature": 1e-9},
///     "output": {"format": "csv", "path": "report.csv"}, "seed": 7, "random_functions": 4 }
/// Throws ConfigError listing every issue with its field path (and line for syntax errors).
RunConfig parse_config(const std::string& text, const std::filesystem::path& base_dir = {});
RunConfig load_config(const std::filesystem::path& path);

/// The built-in suite: every check with default grids over a small function battery.
RunConfig default_config(std::vector<MeasureEntry> measures);

} // namespace cheeger
