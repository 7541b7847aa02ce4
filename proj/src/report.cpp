#include "cheeger/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <tuple>

namespace cheeger {

std::string format_number(double v)
{
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

std::string params_string(const InequalityCertificate& c)
{
    std::vector<std::pair<std::string, std::string>> kv;
    for (const auto& [k, v] : c.labels) kv.emplace_back(k, v);
    for (const auto& [k, v] : c.params) kv.emplace_back(k, format_number(v));
    std::sort(kv.begin(), kv.end());
    std::string out;
    for (const auto& [k, v] : kv) {
        if (!out.empty()) out += ';';
        out += k + "=" + v;
    }
    return out;
}

std::string pass_string(const InequalityCertificate& c)
{
    if (c.status == "inapplicable" || c.status == "numerical_failure" || c.status == "value") return "na";
    return c.pass ? "true" : "false";
}

namespace {

// CSV field quoting for labels containing separators.
std::string field(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    return out + "\"";
}

nlohmann::ordered_json number_json(double v)
{
    if (std::isfinite(v)) return v;
    return format_number(v);
}

} // namespace

std::string csv_row(const InequalityCertificate& c)
{
    std::string row;
    row += field(c.name) + ',';
    row += field(c.family) + ',';
    row += field(params_string(c)) + ',';
    row += (std::isnan(c.p) ? std::string() : format_number(c.p)) + ',';
    row += format_number(c.lhs) + ',';
    row += format_number(c.rhs) + ',';
    row += format_number(c.ratio) + ',';
    row += format_number(c.slack) + ',';
    row += pass_string(c) + ',';
    row += c.status;
    return row;
}

nlohmann::ordered_json to_json(const InequalityCertificate& c)
{
    nlohmann::ordered_json j;
    j["name"] = c.name;
    j["family"] = c.family;
    nlohmann::ordered_json params = nlohmann::ordered_json::object();
    for (const auto& [k, v] : c.params) params[k] = number_json(v);
    for (const auto& [k, v] : c.labels) params[k] = v;
    j["params"] = params;
    j["p"] = std::isnan(c.p) ? nlohmann::ordered_json() : number_json(c.p);
    j["lhs"] = number_json(c.lhs);
    j["rhs"] = number_json(c.rhs);
    j["ratio"] = number_json(c.ratio);
    j["slack"] = number_json(c.slack);
    nlohmann::ordered_json side = nlohmann::ordered_json::object();
    for (const auto& [k, v] : c.side_conditions) side[k] = number_json(v);
    j["side_conditions"] = side;
    j["tolerance"] = c.tolerance;
    const auto verdict = pass_string(c);
    j["pass"] = verdict == "na" ? nlohmann::ordered_json() : nlohmann::ordered_json(c.pass);
    j["status"] = c.status;
    if (!c.message.empty()) j["message"] = c.message;
    return j;
}

void sort_certificates(std::vector<InequalityCertificate>& rows)
{
    std::stable_sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
        return std::forward_as_tuple(a.name, a.family, params_string(a)) <
               std::forward_as_tuple(b.name, b.family, params_string(b));
    });
}

void write_csv(std::ostream& out, const std::vector<InequalityCertificate>& rows)
{
    out << csv_header << '\n';
    for (const auto& r : rows) out << csv_row(r) << '\n';
}

void write_json(std::ostream& out, const std::vector<InequalityCertificate>& rows)
{
    auto arr = nlohmann::ordered_json::array();
    for (const auto& r : rows) arr.push_back(to_json(r));
    out << arr.dump(2) << '\n';
}

} // namespace cheeger
