#include "cheeger/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "cheeger/errors.hpp"
#include "cheeger/expr.hpp"

namespace cheeger {

namespace {

std::string join_issues(const std::vector<ConfigIssue>& issues)
{
    std::string out = "invalid configuration:";
    for (const auto& i : issues) out += "\n  " + (i.location.empty() ? std::string("<root>") : i.location) + ": " + i.message;
    return out;
}

std::size_t edit_distance(const std::string& a, const std::string& b)
{
    std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
    for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
    for (std::size_t i = 1; i <= a.size(); ++i) {
        cur[0] = i;
        for (std::size_t j = 1; j <= b.size(); ++j)
            cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1)});
        std::swap(prev, cur);
    }
    return prev[b.size()];
}

std::vector<double> split_numbers(const std::string& s)
{
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(item, &used);
        } catch (const std::exception&) {
            throw DomainError("bad number '" + item + "'");
        }
        if (item.find_first_not_of(" \t", used) != std::string::npos) throw DomainError("bad number '" + item + "'");
        out.push_back(v);
    }
    return out;
}

using json = nlohmann::json;

class Validator {
public:
    std::vector<ConfigIssue> issues;

    void error(const std::string& where, const std::string& what) { issues.push_back({where, what}); }

    // Accepts a scalar or an array; returns the elements.
    std::vector<json> list(const json& v, const std::string& where)
    {
        if (v.is_array()) return std::vector<json>(v.begin(), v.end());
        if (v.is_null()) {
            error(where, "must not be null");
            return {};
        }
        return {v};
    }

    std::vector<double> numbers(const json& v, const std::string& where)
    {
        std::vector<double> out;
        const auto items = list(v, where);
        for (std::size_t i = 0; i < items.size(); ++i) {
            const auto loc = v.is_array() ? where + "[" + std::to_string(i) + "]" : where;
            if (!items[i].is_number()) error(loc, "expected a number");
            else out.push_back(items[i].get<double>());
        }
        return out;
    }

    std::vector<std::string> strings(const json& v, const std::string& where)
    {
        std::vector<std::string> out;
        const auto items = list(v, where);
        for (std::size_t i = 0; i < items.size(); ++i) {
            const auto loc = v.is_array() ? where + "[" + std::to_string(i) + "]" : where;
            if (!items[i].is_string()) error(loc, "expected a string");
            else out.push_back(items[i].get<std::string>());
        }
        return out;
    }

    void expressions(const std::vector<std::string>& exprs, const std::string& where, bool indexed)
    {
        for (std::size_t i = 0; i < exprs.size(); ++i) {
            try {
                (void)Expression::parse(exprs[i]);
            } catch (const ExpressionError& e) {
                error(indexed ? where + "[" + std::to_string(i) + "]" : where,
                      "malformed expression '" + exprs[i] + "': " + e.what());
            }
        }
    }
};

bool valid_young(const std::string& s)
{
    if (s == "psi1") return true;
    std::string body = s;
    if (body.rfind("|x|^", 0) == 0) body = body.substr(4);
    else if (body.rfind("x^", 0) == 0) body = body.substr(2);
    else return false;
    try {
        std::size_t used = 0;
        const double p = std::stod(body, &used);
        return used == body.size() && p >= 1.0;
    } catch (const std::exception&) {
        return false;
    }
}

void validate_check(Validator& v, const json& j, const std::string& where, CheckSpec& spec)
{
    static const std::set<std::string> keys{"name", "p", "k", "delta", "g", "h", "u", "f",
                                            "variant", "side", "centering", "young"};
    if (!j.is_object()) {
        if (j.is_string()) {
            spec.name = j.get<std::string>();
        } else {
            v.error(where, "expected an object or a check name");
            return;
        }
    } else {
        for (auto it = j.begin(); it != j.end(); ++it)
            if (!keys.count(it.key())) v.error(where + "." + it.key(), "unknown field");
        if (!j.contains("name") || !j["name"].is_string()) {
            v.error(where + ".name", "missing check name");
            return;
        }
        spec.name = j["name"].get<std::string>();
    }
    spec.location = where;
    const auto& names = known_checks();
    if (std::find(names.begin(), names.end(), spec.name) == names.end()) {
        v.error(where + ".name", "unknown check '" + spec.name + "'; did you mean '" + nearest_check(spec.name) + "'?");
        return;
    }
    if (!j.is_object()) return;

    if (j.contains("p")) {
        spec.p = v.numbers(j["p"], where + ".p");
        for (std::size_t i = 0; i < spec.p.size(); ++i)
            if (!(spec.p[i] >= 1.0) || std::isinf(spec.p[i]))
                v.error(where + ".p", "p must satisfy p >= 1 (got " + std::to_string(spec.p[i]) + ")");
    }
    if (j.contains("k")) {
        spec.k = v.numbers(j["k"], where + ".k");
        if (spec.name == "sharpness")
            for (double k : spec.k)
                if (!(k >= 1.0) || k != std::floor(k) || k > 64)
                    v.error(where + ".k", "monomial degrees must be integers in [1, 64]");
    }
    if (j.contains("delta")) {
        spec.delta = v.numbers(j["delta"], where + ".delta");
        for (std::size_t i = 0; i < spec.delta.size(); ++i) {
            if (!(spec.delta[i] > 0.0)) v.error(where + ".delta", "ramp widths must be positive");
            if (i > 0 && !(spec.delta[i] < spec.delta[i - 1]))
                v.error(where + ".delta", "ramp widths must be strictly decreasing");
        }
        if (spec.delta.size() == 1) v.error(where + ".delta", "at least two ramp widths are needed");
    }
    auto expr_list = [&](const char* key, std::vector<std::string>& dst) {
        if (!j.contains(key)) return;
        dst = v.strings(j[key], where + "." + key);
        v.expressions(dst, where + "." + key, j[key].is_array());
    };
    expr_list("g", spec.g);
    expr_list("h", spec.h);
    // u and f are aliases of g for one-function checks
    if (j.contains("u")) expr_list("u", spec.g);
    if (j.contains("f")) expr_list("f", spec.g);

    auto enum_list = [&](const char* key, std::vector<std::string>& dst, const std::set<std::string>& allowed) {
        if (!j.contains(key)) return;
        dst = v.strings(j[key], where + "." + key);
        for (const auto& s : dst)
            if (!allowed.count(s)) {
                std::string opts;
                for (const auto& a : allowed) opts += (opts.empty() ? "" : ", ") + a;
                v.error(where + "." + key, "unknown value '" + s + "' (expected one of: " + opts + ")");
            }
    };
    enum_list("variant", spec.variant, {"centered_2p", "centered_p", "raw_2p", "raw_p"});
    enum_list("side", spec.side, {"left", "right"});
    enum_list("centering", spec.centering, {"median_centered", "mean_centered"});
    if (j.contains("young")) {
        spec.young = v.strings(j["young"], where + ".young");
        for (const auto& s : spec.young)
            if (!valid_young(s)) v.error(where + ".young", "unknown Young function '" + s + "' (use psi1, x^p or |x|^p with p >= 1)");
    }
}

} // namespace

ConfigError::ConfigError(std::vector<ConfigIssue> issues) : std::runtime_error(join_issues(issues)), issues_(std::move(issues))
{
}

const std::vector<std::string>& known_checks()
{
    static const std::vector<std::string> names{
        "best_constant",   "brascamp_lieb",     "cheeger",       "cov_final",          "cov_l1_linf",
        "cov_lp_lq",       "cov_lp_lq_T",       "cov_variant",   "cp_sequence",        "hardy",
        "isoperimetric",   "kernel_identity",   "logconcave_moments", "lp_poincare",   "mean_median_sandwich",
        "moment_comparison", "moment_growth",   "orlicz",        "psi1_bound",         "sharpness",
        "tail_identity",
    };
    return names;
}

std::string nearest_check(const std::string& name)
{
    std::string best;
    std::size_t best_d = static_cast<std::size_t>(-1);
    for (const auto& n : known_checks()) {
        const auto d = edit_distance(name, n);
        if (d < best_d) {
            best_d = d;
            best = n;
        }
    }
    return best;
}

Measure parse_measure_spec(const std::string& spec, const std::filesystem::path& base_dir)
{
    const auto colon = spec.find(':');
    const std::string family = spec.substr(0, colon);
    const std::string rest = colon == std::string::npos ? "" : spec.substr(colon + 1);
    if (family == "tabulated") {
        if (rest.empty()) throw DomainError("tabulated measure needs a file path");
        std::filesystem::path path(rest);
        if (path.is_relative() && !base_dir.empty()) path = base_dir / path;
        return read_tabulated_file(path.string());
    }
    const auto args = rest.empty() ? std::vector<double>{} : split_numbers(rest);
    auto need = [&](std::size_t lo, std::size_t hi) {
        if (args.size() < lo || args.size() > hi) {
            std::ostringstream os;
            os << family << " takes " << lo;
            if (hi != lo) os << " to " << hi;
            os << " parameters, got " << args.size();
            throw DomainError(os.str());
        }
    };
    auto arg = [&](std::size_t i, double dflt) { return i < args.size() ? args[i] : dflt; };
    if (family == "gaussian" || family == "normal") {
        need(0, 2);
        return Measure::gaussian(arg(0, 0.0), arg(1, 1.0));
    }
    if (family == "laplace") {
        need(0, 2);
        return Measure::laplace(arg(0, 0.0), arg(1, 1.0));
    }
    if (family == "exponential") {
        need(0, 1);
        return Measure::exponential(arg(0, 1.0));
    }
    if (family == "uniform") {
        need(0, 2);
        return Measure::uniform(arg(0, 0.0), arg(1, 1.0));
    }
    if (family == "logistic") {
        need(0, 2);
        return Measure::logistic(arg(0, 0.0), arg(1, 1.0));
    }
    if (family == "beta") {
        need(2, 3);
        return Measure::beta(args[0], args[1], arg(2, 1.0));
    }
    throw DomainError("unknown measure family '" + family + "'");
}

RunConfig parse_config(const std::string& text, const std::filesystem::path& base_dir)
{
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        // translate the byte offset into line:column
        std::size_t line = 1, col = 1;
        for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw ConfigError(std::vector<ConfigIssue>{{"line " + std::to_string(line) + ", column " + std::to_string(col), "JSON syntax error"}});
    }
    Validator v;
    RunConfig cfg;
    if (!root.is_object()) throw ConfigError(std::vector<ConfigIssue>{{"", "configuration must be a JSON object"}});

    static const std::set<std::string> top{"measures", "functions", "checks", "tolerances", "output", "seed",
                                           "random_functions"};
    for (auto it = root.begin(); it != root.end(); ++it)
        if (!top.count(it.key())) v.error(it.key(), "unknown field");

    if (!root.contains("measures")) {
        v.error("measures", "at least one measure is required");
    } else {
        const auto specs = v.strings(root["measures"], "measures");
        if (specs.empty()) v.error("measures", "at least one measure is required");
        for (std::size_t i = 0; i < specs.size(); ++i) {
            try {
                cfg.measures.push_back({specs[i], parse_measure_spec(specs[i], base_dir)});
            } catch (const std::exception& e) {
                v.error("measures[" + std::to_string(i) + "]", e.what());
            }
        }
    }
    if (root.contains("functions")) {
        cfg.functions = v.strings(root["functions"], "functions");
        v.expressions(cfg.functions, "functions", true);
    }
    if (!root.contains("checks")) {
        v.error("checks", "at least one check is required");
    } else {
        const auto checks = v.list(root["checks"], "checks");
        if (checks.empty()) v.error("checks", "at least one check is required");
        for (std::size_t i = 0; i < checks.size(); ++i) {
            CheckSpec spec;
            validate_check(v, checks[i], "checks[" + std::to_string(i) + "]", spec);
            cfg.checks.push_back(std::move(spec));
        }
    }
    if (root.contains("tolerances")) {
        const auto& t = root["tolerances"];
        if (!t.is_object()) {
            v.error("tolerances", "expected an object");
        } else {
            for (auto it = t.begin(); it != t.end(); ++it)
                if (it.key() != "pass" && it.key() != "quadrature") v.error("tolerances." + it.key(), "unknown field");
            if (t.contains("pass")) {
                if (!t["pass"].is_number() || !(t["pass"].get<double>() >= 0.0 && t["pass"].get<double>() < 1.0))
                    v.error("tolerances.pass", "must be a number in [0, 1)");
                else cfg.pass_tolerance = t["pass"].get<double>();
            }
            if (t.contains("quadrature")) {
                if (!t["quadrature"].is_number() ||
                    !(t["quadrature"].get<double>() >= 1e-13 && t["quadrature"].get<double>() <= 1e-3))
                    v.error("tolerances.quadrature", "must be a number in [1e-13, 1e-3]");
                else cfg.quadrature_tolerance = t["quadrature"].get<double>();
            }
        }
    }
    if (root.contains("output")) {
        const auto& o = root["output"];
        if (!o.is_object()) {
            v.error("output", "expected an object");
        } else {
            for (auto it = o.begin(); it != o.end(); ++it)
                if (it.key() != "format" && it.key() != "path") v.error("output." + it.key(), "unknown field");
            if (o.contains("format")) {
                if (!o["format"].is_string() || (o["format"] != "csv" && o["format"] != "json"))
                    v.error("output.format", "must be \"csv\" or \"json\"");
                else cfg.format = o["format"].get<std::string>();
            }
            if (o.contains("path")) {
                if (!o["path"].is_string()) v.error("output.path", "expected a string");
                else cfg.output_path = o["path"].get<std::string>();
            }
        }
    }
    if (root.contains("seed")) {
        if (!root["seed"].is_number_unsigned()) v.error("seed", "must be a non-negative integer");
        else cfg.seed = root["seed"].get<std::uint64_t>();
    }
    if (root.contains("random_functions")) {
        const auto& r = root["random_functions"];
        if (!r.is_number_integer() || r.get<long long>() < 0 || r.get<long long>() > 64)
            v.error("random_functions", "must be an integer in [0, 64]");
        else cfg.random_functions = r.get<int>();
    }
    if (!v.issues.empty()) throw ConfigError(std::move(v.issues));
    return cfg;
}

RunConfig load_config(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) throw ConfigError(std::vector<ConfigIssue>{{path.string(), "cannot open configuration file"}});
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str(), path.parent_path());
}

RunConfig default_config(std::vector<MeasureEntry> measures)
{
    RunConfig cfg;
    cfg.measures = std::move(measures);
    cfg.functions = {"x", "x^3", "sgnpow(1.5)", "ramp(0,0.5)"};
    for (const auto& name : known_checks()) {
        CheckSpec spec;
        spec.name = name;
        spec.location = "default." + name;
        cfg.checks.push_back(std::move(spec));
    }
    return cfg;
}

} // namespace cheeger
