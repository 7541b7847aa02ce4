#pragma once

#include <cmath>
#include <limits>
#include <utility>

namespace cheeger {

/// Root of an increasing function on [lo, hi] with residual(lo) <= 0 <= residual(hi).
/// Newton steps from `guess` are accepted while they stay inside the current bracket,
/// otherwise the bracket is bisected.
template <class Residual, class Slope>
double bracketed_newton(Residual&& residual, Slope&& slope, double lo, double hi, double guess,
                        int max_iter = 200)
{
    double x = (guess > lo && guess < hi) ? guess : 0.5 * (lo + hi);
    for (int i = 0; i < max_iter; ++i) {
        const double r = residual(x);
        if (r == 0.0) return x;
        if (r < 0.0) lo = x;
        else hi = x;
        const double d = slope(x);
        double next = (d > 0.0 && std::isfinite(d)) ? x - r / d : std::numeric_limits<double>::quiet_NaN();
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (std::abs(next - x) <= 4.0 * std::numeric_limits<double>::epsilon() * std::abs(x) ||
            hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(lo), std::abs(hi)))
            return next;
        x = next;
    }
    return x;
}

/// Plain bisection for an increasing function; stops at floating-point resolution.
template <class Residual>
double bisect_increasing(Residual&& residual, double lo, double hi, int max_iter = 400)
{
    for (int i = 0; i < max_iter; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (!(mid > lo && mid < hi)) break;
        if (residual(mid) < 0.0) lo = mid;
        else hi = mid;
    }
    return 0.5 * (lo + hi);
}

/// Golden-section minimisation on [a, b]; returns (argmin, min).
template <class F>
std::pair<double, double> golden_section_min(F&& f, double a, double b, int iterations)
{
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c), fd = f(d);
    for (int i = 0; i < iterations; ++i) {
        if (fc <= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    return fc <= fd ? std::pair{c, fc} : std::pair{d, fd};
}

} // namespace cheeger
