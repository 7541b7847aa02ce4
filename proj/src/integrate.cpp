#include "cheeger/integrate.hpp"

#include <algorithm>
#include <cmath>

#include "cheeger/errors.hpp"
#include "cheeger/roots.hpp"

namespace cheeger {

namespace {

// Panel boundaries used on every half: the integrands decay like exp(-c s) in depth, so
// geometric spacing keeps each panel well resolved.
constexpr double depth_breaks[] = {0.125, 0.25, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0, 32.0, 64.0, 128.0, 256.0, 512.0};

std::vector<double> quadratic_depth_grid(std::size_t n)
{
    std::vector<double> grid(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double r = static_cast<double>(j) / static_cast<double>(n - 1);
        grid[j] = max_tail_depth * r * r;
    }
    grid.back() = max_tail_depth;
    return grid;
}

double depth_of(double tail)
{
    if (!(tail > 0.0)) return max_tail_depth;
    return std::clamp(-std::log(2.0 * tail), 0.0, max_tail_depth);
}

} // namespace

double tail_probability(double depth) { return 0.5 * std::exp(-depth); }

Level level_at(const Measure& m, ProbabilityPoint p)
{
    const double q = tail_probability(p.depth);
    if (p.half == Half::lower) {
        const double x = m.lower_quantile(q);
        return {x, q, 1.0 - q, m.pdf(x)};
    }
    const double x = m.upper_quantile(q);
    return {x, 1.0 - q, q, m.pdf(x)};
}

Level level_of(const Measure& m, double x) { return {x, m.cdf(x), m.sf(x), m.pdf(x)}; }

ProbabilityPoint probability_point(const Measure& m, double x)
{
    const double lower = m.cdf(x);
    if (lower <= 0.5) return {Half::lower, depth_of(lower)};
    return {Half::upper, depth_of(m.sf(x))};
}

std::vector<double> knot_depths(const Measure& m, std::span<const double> knots, Half half)
{
    std::vector<double> out;
    for (double k : knots) {
        if (!m.support().contains(k)) continue;
        const auto p = probability_point(m, k);
        if (p.half == half && p.depth > 0.0 && p.depth < max_tail_depth) out.push_back(p.depth);
    }
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

double edge_integrand(const Measure& m, const LevelFunction& phi, Half half)
{
    auto w = [&](double s) { return std::abs(phi(level_at(m, {half, s})) * tail_probability(s)); };
    return std::max(w(max_tail_depth), w(max_tail_depth - 1.0));
}

// The probability axis is truncated at depth max_tail_depth; a convergent integral must have a
// negligible integrand there relative to the tail integral it belongs to.
void check_tail_decay(const Measure& m, const LevelFunction& phi, Half half, double tail_value)
{
    const double edge = edge_integrand(m, phi, half);
    if (edge > std::max(1e-250, 1e-12 * std::abs(tail_value)))
        throw IntegrationError("integrand does not decay in the tail (divergent integral)", tail_value, edge);
}

double integrate_half_unchecked(const Measure& m, const LevelFunction& phi, Half half, double depth_lo,
                                double depth_hi, std::span<const double> knot_depths, const QuadratureOptions& opt)
{
    if (!(depth_hi > depth_lo)) return 0.0;
    auto integrand = [&](double s) {
        const ProbabilityPoint p{half, s};
        return phi(level_at(m, p)) * tail_probability(s);
    };
    std::vector<double> breaks{depth_lo};
    for (double b : depth_breaks)
        if (b > depth_lo && b < depth_hi) breaks.push_back(b);
    for (double k : knot_depths)
        if (k > depth_lo && k < depth_hi) breaks.push_back(k);
    breaks.push_back(depth_hi);
    std::sort(breaks.begin(), breaks.end());
    breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

    return integrate_panels(integrand, breaks, opt).value;
}

} // namespace

double integrate_half(const Measure& m, const LevelFunction& phi, Half half, double depth_lo, double depth_hi,
                      std::span<const double> knot_depths, const QuadratureOptions& opt)
{
    const double value = integrate_half_unchecked(m, phi, half, depth_lo, depth_hi, knot_depths, opt);
    if (depth_hi >= max_tail_depth && depth_hi > depth_lo) check_tail_decay(m, phi, half, value);
    return value;
}

double integrate_dF(const Measure& m, const LevelFunction& phi, double x_lo, double x_hi,
                    std::span<const double> knots, const QuadratureOptions& opt)
{
    if (!(x_hi > x_lo)) return 0.0;
    const auto support = m.support();
    const ProbabilityPoint lo =
        x_lo <= support.a ? ProbabilityPoint{Half::lower, max_tail_depth} : probability_point(m, x_lo);
    const ProbabilityPoint hi =
        x_hi >= support.b ? ProbabilityPoint{Half::upper, max_tail_depth} : probability_point(m, x_hi);

    const auto lower_knots = knot_depths(m, knots, Half::lower);
    const auto upper_knots = knot_depths(m, knots, Half::upper);

    if (lo.half == Half::lower && hi.half == Half::lower)
        return integrate_half(m, phi, Half::lower, hi.depth, lo.depth, lower_knots, opt);
    if (lo.half == Half::upper && hi.half == Half::upper)
        return integrate_half(m, phi, Half::upper, lo.depth, hi.depth, upper_knots, opt);
    if (lo.half == Half::lower && hi.half == Half::upper)
        return integrate_half(m, phi, Half::lower, 0.0, lo.depth, lower_knots, opt) +
               integrate_half(m, phi, Half::upper, 0.0, hi.depth, upper_knots, opt);
    return 0.0;
}

// ---------------------------------------------------------------------------------------------
// CumulativeIntegral

CumulativeIntegral::CumulativeIntegral(const Measure& m, LevelFunction phi, std::vector<double> knots,
                                       std::size_t nodes_per_half, const QuadratureOptions& opt)
    : measure_(m), phi_(std::move(phi)), knots_(std::move(knots)), opt_(opt)
{
    opt_.abs_tol = 0.0; // cell values span hundreds of decades; only relative accuracy is meaningful
    lower_knot_depths_ = knot_depths(m, knots_, Half::lower);
    upper_knot_depths_ = knot_depths(m, knots_, Half::upper);
    grid_ = quadratic_depth_grid(std::max<std::size_t>(nodes_per_half, 16));

    auto build = [&](Half half, const std::vector<double>& kd, std::vector<double>& cum) {
        const std::size_t n = grid_.size();
        cum.assign(n, 0.0);
        for (std::size_t j = n - 1; j-- > 0;)
            cum[j] = cum[j + 1] + integrate_half_unchecked(measure_, phi_, half, grid_[j], grid_[j + 1], kd, opt_);
        check_tail_decay(measure_, phi_, half, cum.front());
    };
    build(Half::lower, lower_knot_depths_, lower_cum_);
    build(Half::upper, upper_knot_depths_, upper_cum_);
    total_ = lower_cum_.front() + upper_cum_.front();
}

double CumulativeIntegral::partial(Half half, double depth) const
{
    if (depth >= max_tail_depth) return 0.0;
    depth = std::max(depth, 0.0);
    const auto& cum = half == Half::lower ? lower_cum_ : upper_cum_;
    const auto& kd = half == Half::lower ? lower_knot_depths_ : upper_knot_depths_;
    const auto it = std::upper_bound(grid_.begin(), grid_.end(), depth);
    const std::size_t j = static_cast<std::size_t>(it - grid_.begin()); // grid_[j-1] <= depth < grid_[j]
    if (grid_[j - 1] == depth) return cum[j - 1];
    return cum[j] + integrate_half_unchecked(measure_, phi_, half, depth, grid_[j], kd, opt_);
}

double CumulativeIntegral::lower(const Level& lv) const
{
    if (lv.lower <= 0.5) return lv.lower > 0.0 ? partial(Half::lower, depth_of(lv.lower)) : 0.0;
    return total_ - (lv.upper > 0.0 ? partial(Half::upper, depth_of(lv.upper)) : 0.0);
}

double CumulativeIntegral::upper(const Level& lv) const
{
    if (lv.upper <= 0.5) return lv.upper > 0.0 ? partial(Half::upper, depth_of(lv.upper)) : 0.0;
    return total_ - (lv.lower > 0.0 ? partial(Half::lower, depth_of(lv.lower)) : 0.0);
}

// ---------------------------------------------------------------------------------------------
// Suprema

SupResult sup_abs_over_levels(const Measure& m, const LevelFunction& phi, std::span<const double> knots,
                              std::size_t nodes_per_half, int refine_iters)
{
    const auto grid = quadratic_depth_grid(std::max<std::size_t>(nodes_per_half, 16));
    struct Candidate {
        Half half;
        std::size_t index;
        double value;
    };
    Candidate best{Half::lower, 0, -1.0};
    auto eval = [&](Half half, double depth) { return std::abs(phi(level_at(m, {half, depth}))); };
    for (Half half : {Half::lower, Half::upper}) {
        for (std::size_t j = 0; j < grid.size(); ++j) {
            const double v = eval(half, grid[j]);
            if (!std::isfinite(v))
                throw ComputationError("non-finite value while scanning for a supremum at depth " +
                                       std::to_string(grid[j]));
            if (v > best.value) best = {half, j, v};
        }
    }
    double best_value = best.value;
    double best_x = level_at(m, {best.half, grid[best.index]}).x;

    // knots of piecewise functions often carry the extremum exactly
    for (double k : knots) {
        if (!m.support().contains(k)) continue;
        const double v = std::abs(phi(level_of(m, k)));
        if (v > best_value) {
            best_value = v;
            best_x = k;
        }
    }

    auto refine = [&](Half half, double a, double b) {
        if (!(b > a)) return;
        auto [arg, val] = golden_section_min([&](double s) { return -eval(half, s); }, a, b, refine_iters);
        if (-val > best_value) {
            best_value = -val;
            best_x = level_at(m, {half, arg}).x;
        }
    };
    const std::size_t j = best.index;
    const double a = j > 0 ? grid[j - 1] : 0.0;
    const double b = j + 1 < grid.size() ? grid[j + 1] : grid.back();
    refine(best.half, a, b);
    if (j == 0) refine(best.half == Half::lower ? Half::upper : Half::lower, 0.0, grid[1]);
    return {best_value, best_x};
}

// ---------------------------------------------------------------------------------------------
// Moments

double expectation(const Measure& m, const DifferentiableFunction& g, const QuadratureOptions& opt)
{
    if (auto c = g.constant_value()) return *c;
    return integrate_dF(m, [&](const Level& lv) { return g(lv.x); }, -std::numeric_limits<double>::infinity(),
                        std::numeric_limits<double>::infinity(), g.knots(), opt);
}

double lp_norm(const Measure& m, const DifferentiableFunction& g, double p, const QuadratureOptions& opt)
{
    if (!(p >= 1.0)) throw DomainError("lp_norm requires p >= 1");
    if (auto c = g.constant_value()) return std::abs(*c);
    const double integral =
        integrate_dF(m, [&](const Level& lv) { return std::pow(std::abs(g(lv.x)), p); },
                     -std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(), g.knots(), opt);
    return std::pow(integral, 1.0 / p);
}

double derivative_lp_norm(const Measure& m, const DifferentiableFunction& g, double p, const QuadratureOptions& opt)
{
    if (!(p >= 1.0)) throw DomainError("derivative_lp_norm requires p >= 1");
    if (g.constant_value()) return 0.0;
    const double integral = integrate_dF(
        m, [&](const Level& lv) { return std::pow(std::abs(g.derivative(lv.x)), p); },
        -std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(), g.knots(), opt);
    return std::pow(integral, 1.0 / p);
}

double sup_norm(const Measure& m, const DifferentiableFunction& g)
{
    if (auto c = g.constant_value()) return std::abs(*c);
    return sup_abs_over_levels(m, [&](const Level& lv) { return g(lv.x); }, g.knots()).value;
}

} // namespace cheeger
