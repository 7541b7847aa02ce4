#pragma once

#include <iosfwd>
#include <vector>

#include "cheeger/certificate.hpp"
#include "cheeger/config.hpp"
#include "cheeger/funcs.hpp"

namespace cheeger {

enum ExitCode : int {
    exit_ok = 0,
    exit_certificate_failure = 1,
    exit_config_error = 2,
    exit_numerical_failure = 3,
};

struct RunResult {
    std::vector<InequalityCertificate> rows; ///< sorted by (name, family, params)
    int exit_code = exit_ok;
};

/// Seeded random piecewise-linear test functions: knots at random quantile levels of m, values
/// uniform in [-1, 1]. The draws do not depend on m, only their abscissae do.
std::vector<DifferentiableFunction> random_battery(const Measure& m, std::uint64_t seed, int count);

/// Executes every (measure, function, check, parameter) cell. Exit code: 1 if any certificate
/// fails, otherwise 3 if any cell hit a numerical failure, otherwise 0. `threads` = 0 uses the
/// hardware concurrency; the row order never depends on it.
RunResult run(const RunConfig& config, unsigned threads = 0);

/// Writes rows in the configured format to config.output_path, or to `fallback` when no path is
/// set. Returns false if the output file cannot be written.
bool write_report(const RunConfig& config, const RunResult& result, std::ostream& fallback);

} // namespace cheeger
