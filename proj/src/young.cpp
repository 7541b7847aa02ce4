#include "cheeger/young.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "cheeger/errors.hpp"
#include "cheeger/integrate.hpp"

namespace cheeger {

YoungFunction::YoungFunction(Scalar n, Scalar n_prime, std::string label)
    : n_(std::move(n)), n_prime_(std::move(n_prime)), label_(std::move(label))
{
}

YoungFunction YoungFunction::power(double p)
{
    if (!(p >= 1.0)) throw DomainError("Young function |x|^p requires p >= 1");
    std::ostringstream os;
    os << "|x|^" << p;
    return {[p](double x) { return std::pow(std::abs(x), p); },
            [p](double x) { return p * sign(x) * std::pow(std::abs(x), p - 1.0); }, os.str()};
}

YoungFunction YoungFunction::psi1()
{
    return {[](double x) { return std::expm1(std::abs(x)); },
            [](double x) { return sign(x) * std::exp(std::abs(x)); }, "psi1"};
}

std::vector<double> default_probe_grid()
{
    std::vector<double> grid;
    for (int i = 0; i <= 60; ++i) grid.push_back(std::pow(10.0, -3.0 + i * 0.1));
    return grid;
}

YoungConstant young_cn(const YoungFunction& n, const std::vector<double>& probe_grid)
{
    std::vector<double> q;
    double sup = 0.0;
    for (double x : probe_grid) {
        if (!(x > 0.0)) continue;
        const double v = x * n.derivative(x) / n(x);
        if (!std::isfinite(v)) return {std::numeric_limits<double>::infinity(), true};
        q.push_back(v);
        sup = std::max(sup, v);
    }
    const std::size_t k = q.size();
    if (k >= 4) {
        bool increasing = true;
        for (std::size_t i = k - 3; i < k; ++i) increasing = increasing && q[i] > q[i - 1] * (1.0 + 1e-9);
        // growth over the last decade of the probe grid
        std::size_t j = k - 1;
        while (j > 0 && probe_grid[j] > probe_grid[k - 1] / 10.0) --j;
        if (increasing && q[k - 1] > q[j] * (1.0 + 1e-6)) return {std::numeric_limits<double>::infinity(), true};
    }
    return {sup, false};
}

double orlicz_norm(const Measure& m, const DifferentiableFunction& g, const YoungFunction& n)
{
    auto modular = [&](double lambda) {
        if (auto c = g.constant_value()) return n(*c / lambda);
        try {
            return integrate_dF(m, [&](const Level& lv) { return n(g(lv.x) / lambda); }, -INFINITY, INFINITY,
                                g.knots());
        } catch (const IntegrationError&) {
            return std::numeric_limits<double>::infinity();
        }
    };
    if (auto c = g.constant_value(); c && *c == 0.0) return 0.0;

    // E N(g / lambda) is nonincreasing in lambda.
    constexpr double lo_limit = 1e-8, hi_limit = 1e8;
    double lo = lo_limit, hi = lo_limit;
    while (!(modular(hi) <= 1.0)) {
        lo = hi;
        hi *= 10.0;
        if (hi > hi_limit) throw DivergentNorm("no finite Orlicz bracket in [1e-8, 1e8] for " + g.label());
    }
    if (hi == lo_limit) {
        if (modular(hi) == 1.0) return hi;
        throw DivergentNorm("Orlicz norm below 1e-8 for " + g.label());
    }
    for (int it = 0; it < 200 && hi / lo - 1.0 > 1e-10; ++it) {
        const double mid = std::sqrt(lo * hi);
        if (modular(mid) <= 1.0) hi = mid;
        else lo = mid;
    }
    return hi;
}

} // namespace cheeger
