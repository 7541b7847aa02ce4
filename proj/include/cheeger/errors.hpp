#pragma once

#include <stdexcept>
#include <string>

namespace cheeger {

/// Argument outside the mathematical domain of an operation (p < 1, t outside (0,1), c <= 0, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Adaptive quadrature that did not reach its tolerance, or an integrand that does not decay
/// in the tails. Carries the best estimate and the error bound achieved so far.
class IntegrationError : public std::runtime_error {
public:
    IntegrationError(const std::string& what, double estimate, double error_bound)
        : std::runtime_error(what), estimate_(estimate), error_bound_(error_bound)
    {
    }

    double estimate() const noexcept { return estimate_; }
    double error_bound() const noexcept { return error_bound_; }

private:
    double estimate_;
    double error_bound_;
};

/// Malformed tabulated density (too few nodes, non-monotone abscissae, negative samples, ...).
class IngestionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A numerical computation that cannot produce a meaningful value (e.g. zero density on the
/// evaluation grid of the isoperimetric profile).
class ComputationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The hypothesis of a conditional inequality does not hold for the given instance.
/// Distinct from a failed certificate: the inequality is inapplicable, not violated.
class HypothesisViolated : public std::runtime_error {
public:
    HypothesisViolated(const std::string& condition, double value)
        : std::runtime_error("hypothesis violated: " + condition + " = " + std::to_string(value)),
          condition_(condition), value_(value)
    {
    }

    const std::string& condition() const noexcept { return condition_; }
    double value() const noexcept { return value_; }

private:
    std::string condition_;
    double value_;
};

/// The measure lacks a property the check requires (log-concavity, potential curvature).
class UnsupportedMeasure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// No finite bracket for an Orlicz norm.
class DivergentNorm : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed function expression; `column` is the 1-based offset of the offending token.
class ExpressionError : public std::invalid_argument {
public:
    ExpressionError(const std::string& what, std::size_t column)
        : std::invalid_argument(what + " at column " + std::to_string(column)), column_(column)
    {
    }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t column_;
};

} // namespace cheeger
