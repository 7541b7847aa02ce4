#include "cheeger/isoperimetry.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <sstream>

#include "cheeger/errors.hpp"
#include "cheeger/roots.hpp"

namespace cheeger {

double isoperimetric_ratio(const Measure& m, double x)
{
    if (!m.support().contains(x)) throw DomainError("isoperimetric ratio requested outside the open support");
    const double mass = std::min(m.cdf(x), m.sf(x));
    return m.pdf(x) / mass;
}

double isoperimetric_ratio_at_level(const Measure& m, double t)
{
    const double x = t <= 0.5 ? m.lower_quantile(t) : m.upper_quantile(1.0 - t);
    return m.pdf(x) / std::min(t, 1.0 - t);
}

bool tail_diverges(std::span<const double> tail_ratios, double interior_min)
{
    const std::size_t n = tail_ratios.size();
    if (n < 4) return false;
    for (std::size_t i = n - 3; i < n; ++i)
        if (!(tail_ratios[i] < tail_ratios[i - 1] * (1.0 - 1e-9))) return false;
    const double last = tail_ratios[n - 1];
    if (!(last < interior_min)) return false;
    const double last_step = (tail_ratios[n - 2] - last) / tail_ratios[n - 2];
    return last_step > 1e-6;
}

IsoperimetricProfile isoperimetric_constant(const Measure& m, int grid_size, int refine_iters)
{
    if (grid_size < 64) throw DomainError("isoperimetric_constant requires grid_size >= 64");
    IsoperimetricProfile profile;
    profile.clamped = m.family() == Family::tabulated;
    const double step = 1.0 / (grid_size + 1);

    auto ratio_checked = [&](double t) {
        const double r = isoperimetric_ratio_at_level(m, t);
        if (!(r > 0.0) || !std::isfinite(r)) {
            std::ostringstream os;
            os << "isoperimetric ratio is not positive at t = " << t << " (zero interpolated density)";
            throw ComputationError(os.str());
        }
        return r;
    };

    profile.grid.reserve(grid_size);
    for (int i = 1; i <= grid_size; ++i) {
        const double t = i * step;
        profile.grid.push_back(t);
        profile.abscissae.push_back(m.quantile(t));
        profile.ratios.push_back(ratio_checked(t));
    }

    std::vector<std::size_t> order(profile.ratios.size());
    std::iota(order.begin(), order.end(), 0);
    std::partial_sort(order.begin(), order.begin() + 3, order.end(),
                      [&](std::size_t a, std::size_t b) { return profile.ratios[a] < profile.ratios[b]; });

    double best = profile.ratios[order[0]];
    double best_t = profile.grid[order[0]];
    for (int r = 0; r < 3; ++r) {
        const std::size_t i = order[r];
        const double a = i > 0 ? profile.grid[i - 1] : 0.5 * profile.grid[0];
        const double b = i + 1 < profile.grid.size() ? profile.grid[i + 1] : 0.5 * (1.0 + profile.grid.back());
        auto [t, v] = golden_section_min(ratio_checked, a, b, refine_iters);
        if (v < best) {
            best = v;
            best_t = t;
        }
    }

    // tail guard: probe tail masses 1e-7 ... 1e-16 on both sides
    for (bool lower_side : {true, false}) {
        std::vector<double> tail;
        for (int e = 7; e <= 16; ++e) {
            const double q = std::pow(10.0, -e);
            const double x = lower_side ? m.lower_quantile(q) : m.upper_quantile(q);
            tail.push_back(m.pdf(x) / q);
        }
        if (tail_diverges(tail, best)) {
            profile.diverging_tail = true;
        } else if (tail.back() < best * (1.0 - 1e-12) && tail.back() > 0.0) {
            best = tail.back();
            best_t = lower_side ? 1e-16 : 1.0 - 1e-16;
        }
    }

    profile.argmin_t = best_t;
    profile.argmin_x = m.quantile(std::clamp(best_t, 1e-300, 1.0 - 1e-16));
    profile.is_value = profile.diverging_tail ? 0.0 : best;
    return profile;
}

void write_profile_csv(std::ostream& out, const IsoperimetricProfile& profile)
{
    out << "t,x,ratio\n";
    char buf[128];
    for (std::size_t i = 0; i < profile.grid.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.10g,%.10g,%.10g\n", profile.grid[i], profile.abscissae[i], profile.ratios[i]);
        out << buf;
    }
}

} // namespace cheeger
