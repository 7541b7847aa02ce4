#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace cheeger {

class Measure;

enum class FunctionKind {
    constant,
    monomial,
    power,        ///< x^a for real a, defined for x > 0
    signed_power,
    abs_power,
    ramp,
    affine,
    piecewise_linear,
    product,
    shifted,
    custom,
};

/// Integrability metadata: |g(x)| <= C (1 + |x|^growth); growth 0 with bounded = true means
/// globally bounded. `positive_domain` marks functions only defined for x > 0.
struct Growth {
    bool bounded = false;
    double exponent = 0.0;
    bool positive_domain = false;
};

/// A test function together with its exact derivative. Immutable value object.
class DifferentiableFunction {
public:
    using Scalar = std::function<double(double)>;

    DifferentiableFunction(Scalar eval, Scalar deriv, std::vector<double> knots, FunctionKind kind,
                           std::string label, Growth growth = {});

    double operator()(double x) const { return eval_(x); }
    double value(double x) const { return eval_(x); }
    double derivative(double x) const { return deriv_(x); }

    /// Abscissae where the derivative may jump; quadrature splits panels there.
    std::span<const double> knots() const { return knots_; }
    FunctionKind kind() const { return kind_; }
    const std::string& label() const { return label_; }
    const Growth& growth() const { return growth_; }

    /// Set for functions known to be identically constant, so that centering is exact.
    std::optional<double> constant_value() const { return constant_; }

    /// g + c
    DifferentiableFunction plus(double c) const;

    /// Same function under a different label.
    DifferentiableFunction relabeled(std::string label) const
    {
        auto out = *this;
        out.label_ = std::move(label);
        return out;
    }

private:
    friend DifferentiableFunction constant(double c);

    Scalar eval_;
    Scalar deriv_;
    std::vector<double> knots_;
    FunctionKind kind_;
    std::string label_;
    Growth growth_;
    std::optional<double> constant_;
};

/// sign(x) = +1 for x >= 0, -1 otherwise.
inline double sign(double x) { return x >= 0.0 ? 1.0 : -1.0; }

struct RampSpec {
    double center = 0.0;
    double delta = 1.0;
};

DifferentiableFunction constant(double c);
DifferentiableFunction identity();
DifferentiableFunction affine(double slope, double intercept);
/// x^k, k >= 1.
DifferentiableFunction monomial(int k);
/// x^a on x > 0 for real a (negative exponents allowed).
DifferentiableFunction power(double a);
/// sign(x)|x|^p, p >= 1, knot at 0.
DifferentiableFunction signed_power(double p);
/// |x|^p, p >= 1, knot at 0.
DifferentiableFunction abs_power(double p);
/// clamp((x - center)/delta, -1, 1); Lipschitz with constant 1/delta, knots at center +- delta.
DifferentiableFunction ramp(RampSpec spec);
/// Continuous piecewise-linear interpolant of (nodes, values), constant beyond the end nodes.
DifferentiableFunction piecewise_linear(std::vector<double> nodes, std::vector<double> values);
/// Pointwise product with product-rule derivative; knot lists are merged.
DifferentiableFunction product(const DifferentiableFunction& g, const DifferentiableFunction& h);
/// g - E_m[g]; throws IntegrationError if the mean cannot be computed.
DifferentiableFunction centered(const DifferentiableFunction& g, const Measure& m);
/// g - c
DifferentiableFunction shifted(const DifferentiableFunction& g, double c);

} // namespace cheeger
