#include "cheeger/funcs.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <sstream>

#include "cheeger/errors.hpp"
#include "cheeger/integrate.hpp"

namespace cheeger {

namespace {

std::string num(double v)
{
    std::ostringstream os;
    os << v;
    return os.str();
}

std::vector<double> merge_knots(std::span<const double> a, std::span<const double> b)
{
    std::vector<double> out(a.begin(), a.end());
    out.insert(out.end(), b.begin(), b.end());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

} // namespace

DifferentiableFunction::DifferentiableFunction(Scalar eval, Scalar deriv, std::vector<double> knots,
                                               FunctionKind kind, std::string label, Growth growth)
    : eval_(std::move(eval)), deriv_(std::move(deriv)), knots_(std::move(knots)), kind_(kind),
      label_(std::move(label)), growth_(growth)
{
    std::sort(knots_.begin(), knots_.end());
    knots_.erase(std::unique(knots_.begin(), knots_.end()), knots_.end());
}

DifferentiableFunction DifferentiableFunction::plus(double c) const
{
    if (constant_) return constant(*constant_ + c);
    auto self = *this;
    DifferentiableFunction out([self, c](double x) { return self(x) + c; },
                               [self](double x) { return self.derivative(x); }, knots_, FunctionKind::shifted,
                               label_ + (c >= 0 ? " + " : " - ") + num(std::abs(c)), growth_);
    return out;
}

DifferentiableFunction constant(double c)
{
    DifferentiableFunction f([c](double) { return c; }, [](double) { return 0.0; }, {}, FunctionKind::constant,
                             num(c), Growth{true, 0.0, false});
    f.constant_ = c;
    return f;
}

DifferentiableFunction identity() { return monomial(1); }

DifferentiableFunction affine(double slope, double intercept)
{
    return {[slope, intercept](double x) { return slope * x + intercept; }, [slope](double) { return slope; }, {},
            FunctionKind::affine, num(slope) + "*x + " + num(intercept), Growth{slope == 0.0, 1.0, false}};
}

DifferentiableFunction monomial(int k)
{
    if (k < 1) throw DomainError("monomial degree must be >= 1");
    auto ipow = [](double x, int n) {
        double r = 1.0;
        for (int i = 0; i < n; ++i) r *= x;
        return r;
    };
    return {[k, ipow](double x) { return ipow(x, k); },
            [k, ipow](double x) { return k * ipow(x, k - 1); },
            {},
            FunctionKind::monomial,
            k == 1 ? "x" : "x^" + std::to_string(k),
            Growth{false, static_cast<double>(k), false}};
}

DifferentiableFunction power(double a)
{
    if (a == std::floor(a) && a >= 1.0 && a <= 64.0) return monomial(static_cast<int>(a));
    return {[a](double x) { return x > 0.0 ? std::pow(x, a) : std::numeric_limits<double>::quiet_NaN(); },
            [a](double x) { return x > 0.0 ? a * std::pow(x, a - 1.0) : std::numeric_limits<double>::quiet_NaN(); },
            {},
            FunctionKind::power,
            "x^" + num(a),
            Growth{false, a, true}};
}

DifferentiableFunction signed_power(double p)
{
    if (!(p >= 1.0)) throw DomainError("signed_power requires p >= 1 (derivative unbounded at 0 otherwise)");
    return {[p](double x) { return sign(x) * std::pow(std::abs(x), p); },
            [p](double x) { return p * std::pow(std::abs(x), p - 1.0); },
            {0.0},
            FunctionKind::signed_power,
            "sgnpow(" + num(p) + ")",
            Growth{false, p, false}};
}

DifferentiableFunction abs_power(double p)
{
    if (!(p >= 1.0)) throw DomainError("abs_power requires p >= 1");
    return {[p](double x) { return std::pow(std::abs(x), p); },
            [p](double x) { return p * sign(x) * std::pow(std::abs(x), p - 1.0); },
            {0.0},
            FunctionKind::abs_power,
            "abspow(" + num(p) + ")",
            Growth{false, p, false}};
}

DifferentiableFunction ramp(RampSpec spec)
{
    if (!(spec.delta > 0.0)) throw DomainError("ramp width must be positive");
    const double c = spec.center, d = spec.delta;
    return {[c, d](double x) { return std::clamp((x - c) / d, -1.0, 1.0); },
            [c, d](double x) { return std::abs(x - c) < d ? 1.0 / d : 0.0; },
            {c - d, c + d},
            FunctionKind::ramp,
            "ramp(" + num(c) + "," + num(d) + ")",
            Growth{true, 0.0, false}};
}

DifferentiableFunction piecewise_linear(std::vector<double> nodes, std::vector<double> values)
{
    if (nodes.size() != values.size() || nodes.size() < 2)
        throw DomainError("piecewise_linear needs at least two (node, value) pairs");
    for (std::size_t i = 1; i < nodes.size(); ++i)
        if (!(nodes[i] > nodes[i - 1])) throw DomainError("piecewise_linear nodes must be strictly increasing");
    auto data = std::make_shared<const std::pair<std::vector<double>, std::vector<double>>>(nodes, values);
    auto eval = [data](double x) {
        const auto& [xs, ys] = *data;
        if (x <= xs.front()) return ys.front();
        if (x >= xs.back()) return ys.back();
        const auto i = static_cast<std::size_t>(std::upper_bound(xs.begin(), xs.end(), x) - xs.begin()) - 1;
        const double w = (x - xs[i]) / (xs[i + 1] - xs[i]);
        return ys[i] + w * (ys[i + 1] - ys[i]);
    };
    auto deriv = [data](double x) {
        const auto& [xs, ys] = *data;
        if (x <= xs.front() || x >= xs.back()) return 0.0;
        const auto i = static_cast<std::size_t>(std::upper_bound(xs.begin(), xs.end(), x) - xs.begin()) - 1;
        return (ys[i + 1] - ys[i]) / (xs[i + 1] - xs[i]);
    };
    return {eval, deriv, nodes, FunctionKind::piecewise_linear,
            "pl[" + std::to_string(nodes.size()) + "]", Growth{true, 0.0, false}};
}

DifferentiableFunction product(const DifferentiableFunction& g, const DifferentiableFunction& h)
{
    if (g.constant_value() && h.constant_value()) return constant(*g.constant_value() * *h.constant_value());
    Growth growth{g.growth().bounded && h.growth().bounded, g.growth().exponent + h.growth().exponent,
                  g.growth().positive_domain || h.growth().positive_domain};
    return {[g, h](double x) { return g(x) * h(x); },
            [g, h](double x) { return g.derivative(x) * h(x) + g(x) * h.derivative(x); },
            merge_knots(g.knots(), h.knots()),
            FunctionKind::product,
            "(" + g.label() + ")*(" + h.label() + ")",
            growth};
}

DifferentiableFunction shifted(const DifferentiableFunction& g, double c) { return g.plus(-c); }

DifferentiableFunction centered(const DifferentiableFunction& g, const Measure& m)
{
    if (g.constant_value()) return constant(0.0);
    const double mean = expectation(m, g);
    auto out = g.plus(-mean);
    return DifferentiableFunction([out](double x) { return out(x); }, [out](double x) { return out.derivative(x); },
                                  std::vector<double>(g.knots().begin(), g.knots().end()), FunctionKind::shifted,
                                  "center(" + g.label() + ")", g.growth());
}

} // namespace cheeger
