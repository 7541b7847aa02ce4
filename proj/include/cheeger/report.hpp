#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "cheeger/certificate.hpp"

namespace cheeger {

inline constexpr const char* csv_header = "name,family,params,p,lhs,rhs,ratio,slack,pass,status";

/// Number formatted with %.10g; infinities as inf/-inf and NaN as nan.
std::string format_number(double v);

/// "key=value" pairs of labels and params, sorted by key and joined with ';'.
std::string params_string(const InequalityCertificate& c);

/// "true", "false" or "na" (rows that carry no verdict: inapplicable, numerical failure, values).
std::string pass_string(const InequalityCertificate& c);

std::string csv_row(const InequalityCertificate& c);
nlohmann::ordered_json to_json(const InequalityCertificate& c);

/// Rows sorted by (name, family, params).
void sort_certificates(std::vector<InequalityCertificate>& rows);

void write_csv(std::ostream& out, const std::vector<InequalityCertificate>& rows);
void write_json(std::ostream& out, const std::vector<InequalityCertificate>& rows);

} // namespace cheeger
