#pragma once

#include <limits>
#include <map>
#include <string>

namespace cheeger {

inline constexpr double default_pass_tolerance = 1e-6;

/// One checked inequality instance lhs <= rhs.
struct InequalityCertificate {
    std::string name;
    std::string family;                         ///< measure description, e.g. "laplace(0,1)"
    std::map<std::string, double> params;       ///< numeric parameters (p, q, k, delta, ...)
    std::map<std::string, std::string> labels;  ///< symbolic parameters (g, h, variant, side, ...)
    double p = std::numeric_limits<double>::quiet_NaN();
    double lhs = 0.0;
    double rhs = 0.0;
    double ratio = 0.0;
    double slack = 0.0;
    std::map<std::string, double> side_conditions;
    double tolerance = default_pass_tolerance;
    bool pass = false;
    bool informative = true; ///< false when rhs is +infinity (Is = 0)
    std::string status;      ///< pass | fail | uninformative | inapplicable | numerical_failure | value
    std::string message;     ///< reason for inapplicable / numerical_failure rows
};

/// Fills ratio, slack, pass and status from lhs and rhs: pass iff lhs <= rhs (1 + tol).
inline void finalize(InequalityCertificate& c, double tol)
{
    c.tolerance = tol;
    c.slack = c.rhs - c.lhs;
    if (c.rhs == std::numeric_limits<double>::infinity()) {
        c.ratio = 0.0;
        c.pass = true;
        c.informative = false;
        c.status = "uninformative";
        return;
    }
    if (c.rhs > 0.0) c.ratio = c.lhs / c.rhs;
    else c.ratio = c.lhs > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
    c.pass = c.lhs <= c.rhs * (1.0 + tol);
    c.status = c.pass ? "pass" : "fail";
}

} // namespace cheeger
