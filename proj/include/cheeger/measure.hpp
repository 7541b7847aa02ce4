#pragma once

#include <array>
#include <filesystem>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace cheeger {

enum class Family { gaussian, laplace, exponential, uniform, logistic, beta, tabulated };

enum class LogConcavity { none, log_concave, strictly_log_concave };

std::string to_string(Family family);

/// Open interval (a, b); either endpoint may be infinite.
struct SupportInterval {
    double a;
    double b;

    bool contains(double x) const { return x > a && x < b; }
};

/// Density given by samples on a strictly increasing grid. The pdf is the piecewise-linear
/// interpolant of the (normalised) samples and the cdf is its exact integral, so the two are
/// consistent by construction.
class TabulatedDensity {
public:
    static constexpr std::size_t min_nodes = 8;

    /// Throws IngestionError on fewer than `min_nodes` nodes, non-increasing nodes, negative or
    /// non-finite samples, or samples that are all zero.
    TabulatedDensity(std::vector<double> nodes, std::vector<double> values);

    std::span<const double> nodes() const { return nodes_; }
    std::span<const double> values() const { return values_; }

    double pdf(double x) const;
    double cdf(double x) const;
    double sf(double x) const;
    double lower_quantile(double t) const;
    double upper_quantile(double u) const;

    /// Density with abscissae divided by c and samples multiplied by c.
    TabulatedDensity rescaled(double c) const;

private:
    TabulatedDensity() = default;
    void build_cumulative();
    double segment_mass(std::size_t i, double x) const; ///< mass of [nodes[i], x]

    std::vector<double> nodes_;
    std::vector<double> values_;
    std::vector<double> cum_;      ///< cdf at nodes
    std::vector<double> cum_tail_; ///< sf at nodes, accumulated from the right
};

/// A continuous probability law on an interval with strictly positive density on its interior.
/// Immutable; every member is safe to call concurrently.
class Measure {
public:
    static Measure gaussian(double mean, double sd);
    static Measure laplace(double loc, double scale);
    static Measure exponential(double rate);
    static Measure uniform(double lo, double hi);
    static Measure logistic(double loc, double scale);
    /// Beta(alpha, beta) law on (0, scale).
    static Measure beta(double alpha, double beta, double scale = 1.0);
    static Measure tabulated(TabulatedDensity density);

    Family family() const { return family_; }
    /// Family parameters in declaration order: gaussian(mean, sd), laplace(loc, scale),
    /// exponential(rate), uniform(lo, hi), logistic(loc, scale), beta(alpha, beta, scale).
    std::span<const double> parameters() const { return {params_.data(), param_count_}; }
    SupportInterval support() const { return support_; }
    LogConcavity log_concavity() const { return log_concavity_; }
    const TabulatedDensity* tabulated_density() const { return tabulated_.get(); }

    /// Second derivative of the potential phi = -log f, available for strictly log-concave laws.
    bool has_potential_curvature() const { return log_concavity_ == LogConcavity::strictly_log_concave; }
    double potential_second_derivative(double x) const;

    /// Density; 0 outside the open support.
    double pdf(double x) const;
    double cdf(double x) const;
    /// Survival function 1 - F(x), computed without cancellation in the upper tail.
    double sf(double x) const;

    /// Inverse cdf; throws DomainError unless 0 < t < 1.
    double quantile(double t) const;
    /// x with F(x) = t, accurate for t down to the smallest normal double (t <= 1/2 intended).
    double lower_quantile(double t) const;
    /// x with 1 - F(x) = u, accurate for small u (u <= 1/2 intended).
    double upper_quantile(double u) const;
    double median() const { return lower_quantile(0.5); }

    /// Law of X / c, i.e. density x -> c f(c x). Throws DomainError for c <= 0.
    Measure rescale(double c) const;

    /// Short human readable form, e.g. "laplace(0,1)".
    std::string describe() const;

private:
    Measure() = default;

    Family family_ = Family::gaussian;
    std::array<double, 3> params_{};
    std::size_t param_count_ = 0;
    SupportInterval support_{};
    LogConcavity log_concavity_ = LogConcavity::none;
    double beta_log_norm_ = 0.0; ///< log B(alpha, beta), cached at construction
    std::shared_ptr<const TabulatedDensity> tabulated_;
};

/// Normalised tabulated measure from samples.
Measure ingest_tabulated(std::vector<double> nodes, std::vector<double> values);

/// Reads the two-column `x density` text format (whitespace separated, `#` starts a comment).
/// Throws IngestionError on unreadable files or malformed lines.
Measure read_tabulated_file(const std::filesystem::path& path);

} // namespace cheeger
