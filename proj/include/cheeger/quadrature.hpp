#pragma once

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <span>
#include <vector>

#include "cheeger/errors.hpp"

namespace cheeger {

inline constexpr double default_quadrature_rel_tol = 1e-9;

/// Process-wide relative tolerance picked up by default-constructed QuadratureOptions.
inline std::atomic<double>& quadrature_rel_tol_setting()
{
    static std::atomic<double> value{default_quadrature_rel_tol};
    return value;
}

struct QuadratureOptions {
    double rel_tol = quadrature_rel_tol_setting().load(std::memory_order_relaxed);
    double abs_tol = 1e-13;
    int max_panels = 4000;
};

struct QuadratureResult {
    double value = 0.0;
    double error = 0.0;
    double abs_value = 0.0; ///< integral of |f|, used as the round-off scale
    int evaluations = 0;
};

namespace detail {

/// Nodes and weights of the 15-point Gauss-Legendre rule on [-1, 1].
struct GaussLegendre15 {
    static constexpr int n = 15;
    std::array<double, n> nodes{};
    std::array<double, n> weights{};

    GaussLegendre15()
    {
        for (int i = 0; i < n; ++i) {
            double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
            double dp = 0.0;
            for (int iter = 0; iter < 100; ++iter) {
                double p0 = 1.0, p1 = x;
                for (int k = 2; k <= n; ++k) {
                    double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n * (x * p1 - p0) / (x * x - 1.0);
                double dx = p1 / dp;
                x -= dx;
                if (std::abs(dx) < 1e-16) break;
            }
            nodes[i] = x;
            weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
        }
    }
};

inline const GaussLegendre15& gl15()
{
    static const GaussLegendre15 rule;
    return rule;
}

struct PanelSum {
    double value;
    double abs_value;
};

template <class F>
PanelSum gl15_panel(F& f, double a, double b)
{
    const auto& rule = gl15();
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    double sum = 0.0, abs_sum = 0.0;
    for (int i = 0; i < GaussLegendre15::n; ++i) {
        const double v = f(mid + half * rule.nodes[i]);
        if (!std::isfinite(v))
            throw IntegrationError("non-finite integrand value", std::numeric_limits<double>::quiet_NaN(),
                                   std::numeric_limits<double>::infinity());
        sum += rule.weights[i] * v;
        abs_sum += rule.weights[i] * std::abs(v);
    }
    return {sum * half, abs_sum * half};
}

struct Panel {
    double a, b;
    double left, right; ///< 15-point estimates on the two halves
    double abs_value;
    double error;       ///< |whole - (left + right)|

    bool operator<(const Panel& other) const { return error < other.error; }
};

template <class F>
Panel make_panel(F& f, double a, double b, double whole)
{
    const double m = 0.5 * (a + b);
    auto l = gl15_panel(f, a, m);
    auto r = gl15_panel(f, m, b);
    return {a, b, l.value, r.value, l.abs_value + r.abs_value, std::abs(whole - (l.value + r.value))};
}

} // namespace detail

/// Globally adaptive composite 15-point Gauss-Legendre quadrature of f over the union of the
/// consecutive intervals defined by `breaks` (sorted, at least two entries). A panel is bisected
/// while its whole-panel estimate disagrees with the sum over its halves; the panel with the
/// largest disagreement is split first.
template <class F>
QuadratureResult integrate_panels(F&& f, std::span<const double> breaks, const QuadratureOptions& opt = {})
{
    QuadratureResult result;
    if (breaks.size() < 2) return result;

    std::priority_queue<detail::Panel> heap;
    double value = 0.0, error = 0.0, abs_value = 0.0;
    int evaluations = 0;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        const double a = breaks[i], b = breaks[i + 1];
        if (!(b > a)) continue;
        auto whole = detail::gl15_panel(f, a, b);
        auto p = detail::make_panel(f, a, b, whole.value);
        evaluations += 45;
        value += p.left + p.right;
        error += p.error;
        abs_value += p.abs_value;
        heap.push(p);
    }

    auto tolerance = [&] {
        return std::max({opt.abs_tol, opt.rel_tol * std::abs(value),
                         64.0 * std::numeric_limits<double>::epsilon() * abs_value});
    };

    int panels = static_cast<int>(heap.size());
    while (error > tolerance()) {
        if (panels >= opt.max_panels)
            throw IntegrationError("adaptive quadrature did not converge", value, error);
        auto p = heap.top();
        heap.pop();
        const double m = 0.5 * (p.a + p.b);
        if (!(m > p.a && m < p.b))
            throw IntegrationError("adaptive quadrature reached machine resolution", value, error);
        auto l = detail::make_panel(f, p.a, m, p.left);
        auto r = detail::make_panel(f, m, p.b, p.right);
        evaluations += 60;
        value += (l.left + l.right + r.left + r.right) - (p.left + p.right);
        error += (l.error + r.error) - p.error;
        abs_value += (l.abs_value + r.abs_value) - p.abs_value;
        heap.push(l);
        heap.push(r);
        ++panels;
        if (panels % 256 == 0) {
            // resum to keep the running totals free of drift
            auto copy = heap;
            value = error = abs_value = 0.0;
            while (!copy.empty()) {
                const auto& q = copy.top();
                value += q.left + q.right;
                error += q.error;
                abs_value += q.abs_value;
                copy.pop();
            }
        }
    }

    result.value = value;
    result.error = error;
    result.abs_value = abs_value;
    result.evaluations = evaluations;
    return result;
}

/// Convenience overload for a single interval with optional interior split points.
template <class F>
QuadratureResult integrate_interval(F&& f, double a, double b, std::span<const double> knots = {},
                                    const QuadratureOptions& opt = {})
{
    std::vector<double> breaks{a};
    for (double k : knots)
        if (k > a && k < b) breaks.push_back(k);
    breaks.push_back(b);
    std::sort(breaks.begin(), breaks.end());
    breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
    return integrate_panels(f, breaks, opt);
}

} // namespace cheeger
