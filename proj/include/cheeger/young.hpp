#pragma once

#include <functional>
#include <string>
#include <vector>

#include "cheeger/funcs.hpp"
#include "cheeger/measure.hpp"

namespace cheeger {

/// Even convex N with N(0) = 0 and N > 0 off 0, with its derivative.
class YoungFunction {
public:
    using Scalar = std::function<double(double)>;

    YoungFunction(Scalar n, Scalar n_prime, std::string label);

    /// N(x) = |x|^p, p >= 1.
    static YoungFunction power(double p);
    /// N(x) = exp(|x|) - 1.
    static YoungFunction psi1();

    double operator()(double x) const { return n_(x); }
    double derivative(double x) const { return n_prime_(x); }
    const std::string& label() const { return label_; }

private:
    Scalar n_;
    Scalar n_prime_;
    std::string label_;
};

/// sup x N'(x) / N(x) over the probe grid; +infinity when the quotient is still increasing over
/// the last decade of the grid (three successive increases).
struct YoungConstant {
    double value;
    bool infinite;
};

/// Default probe grid: 61 logarithmically spaced points on [1e-3, 1e3].
std::vector<double> default_probe_grid();
YoungConstant young_cn(const YoungFunction& n, const std::vector<double>& probe_grid = default_probe_grid());

/// inf{lambda : E N(g / lambda) <= 1} by bracketing on [1e-8, 1e8] and bisection in log lambda
/// to relative 1e-10. Throws DivergentNorm when no bracket exists.
double orlicz_norm(const Measure& m, const DifferentiableFunction& g, const YoungFunction& n);

} // namespace cheeger
