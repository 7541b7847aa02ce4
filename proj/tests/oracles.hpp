#pragma once
// Independent reference computations for the tests. Nothing here touches the
// library's quadrature or depth mapping; these are the slow, obvious versions.

#include <cmath>
#include <functional>

namespace oracle {

// composite Simpson, n rounded up to even
inline double simpson(const std::function<double(double)>& f, double a, double b, int n = 20000)
{
    if (n % 2) ++n;
    const double h = (b - a) / n;
    double s = f(a) + f(b);
    for (int i = 1; i < n; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
    return s * h / 3.0;
}

// E|X|^p for the standard Laplace law: Gamma(p+1)
inline double laplace_abs_moment(double p) { return std::tgamma(p + 1.0); }

// E|X|^p for N(0,1)
inline double gaussian_abs_moment(double p)
{
    return std::pow(2.0, p / 2.0) * std::tgamma((p + 1.0) / 2.0) / std::sqrt(M_PI);
}

// E X^p for Exp(1)
inline double exponential_moment(double p) { return std::tgamma(p + 1.0); }

inline double bisect(const std::function<double(double)>& f, double lo, double hi, int iters = 200)
{
    double flo = f(lo);
    for (int i = 0; i < iters; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if ((fm > 0) == (flo > 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

inline double central_difference(const std::function<double(double)>& f, double x, double h = 1e-5)
{
    return (f(x + h) - f(x - h)) / (2.0 * h);
}

inline double rel_err(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

} // namespace oracle
