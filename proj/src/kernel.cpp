#include "cheeger/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "cheeger/errors.hpp"

namespace cheeger {

namespace {

std::vector<double> merged(std::span<const double> a, std::span<const double> b)
{
    std::vector<double> out(a.begin(), a.end());
    out.insert(out.end(), b.begin(), b.end());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// Tail masses below exp(-600)/2 are evaluated at that level: the cumulative cache is truncated
// at max_tail_depth, and the part beyond it is negligible only well inside that depth.
constexpr double clamp_depth = 600.0;

Level clamp_level(const Measure& m, Level lv)
{
    const double floor = tail_probability(clamp_depth);
    if (lv.lower < floor) return level_at(m, {Half::lower, clamp_depth});
    if (lv.upper < floor) return level_at(m, {Half::upper, clamp_depth});
    return lv;
}

} // namespace

double kernel_eval(const Measure& m, double x, double y)
{
    const double lo = std::min(x, y), hi = std::max(x, y);
    return m.cdf(lo) * m.sf(hi);
}

double covariance_direct(const Measure& m, const DifferentiableFunction& g, const DifferentiableFunction& h,
                         const QuadratureOptions& opt)
{
    if (g.constant_value() || h.constant_value()) return 0.0;
    const double eg = expectation(m, g, opt);
    const double eh = expectation(m, h, opt);
    const auto knots = merged(g.knots(), h.knots());
    return integrate_dF(
        m, [&](const Level& lv) { return (g(lv.x) - eg) * (h(lv.x) - eh); }, -INFINITY, INFINITY, knots, opt);
}

double covariance_kernel(const Measure& m, const DifferentiableFunction& g, const DifferentiableFunction& h,
                         const QuadratureOptions& opt)
{
    if (g.constant_value() || h.constant_value()) return 0.0;
    const auto hk = std::vector<double>(h.knots().begin(), h.knots().end());
    const CumulativeIntegral cum(m, [&h](const Level& lv) { return h(lv.x); }, hk,
                                 CumulativeIntegral::default_nodes_per_half, opt);
    const double eh = cum.total();
    const auto knots = merged(g.knots(), h.knots());
    // int_{-inf}^{inf} K(x,y) h'(y) dy = F(x) E h - int_{-inf}^x h dF = int_x^inf h dF - (1 - F(x)) E h
    auto integrand = [&](const Level& lv) {
        if (!(lv.pdf > 0.0)) return 0.0;
        const double psi = lv.lower <= 0.5 ? lv.lower * eh - cum.lower(lv) : cum.upper(lv) - lv.upper * eh;
        return g.derivative(lv.x) * psi / lv.pdf;
    };
    return integrate_dF(m, integrand, -INFINITY, INFINITY, knots, opt);
}

namespace {

double kernel_side(const Measure& m, const DifferentiableFunction& h, double z, const QuadratureOptions& opt)
{
    const double fz = m.cdf(z), sz = m.sf(z);
    auto knots = std::vector<double>(h.knots().begin(), h.knots().end());
    if (m.support().contains(z)) knots.push_back(z);
    std::sort(knots.begin(), knots.end());
    auto integrand = [&](const Level& lv) {
        if (!(lv.pdf > 0.0)) return 0.0;
        const double k = lv.x <= z ? lv.lower * sz : fz * lv.upper;
        return k * h.derivative(lv.x) / lv.pdf;
    };
    return integrate_dF(m, integrand, -INFINITY, INFINITY, knots, opt);
}

} // namespace

TailIdentity tail_identity_left(const Measure& m, const DifferentiableFunction& h, double z,
                                const QuadratureOptions& opt)
{
    if (h.constant_value()) return {0.0, 0.0};
    const double eh = expectation(m, h, opt);
    const double below = m.cdf(z) > 0.0
                             ? integrate_dF(m, [&h](const Level& lv) { return h(lv.x); }, -INFINITY, z, h.knots(), opt)
                             : 0.0;
    return {m.cdf(z) * eh - below, kernel_side(m, h, z, opt)};
}

TailIdentity tail_identity_right(const Measure& m, const DifferentiableFunction& h, double z,
                                 const QuadratureOptions& opt)
{
    if (h.constant_value()) return {0.0, 0.0};
    const double eh = expectation(m, h, opt);
    const double above = m.sf(z) > 0.0
                             ? integrate_dF(m, [&h](const Level& lv) { return h(lv.x); }, z, INFINITY, h.knots(), opt)
                             : 0.0;
    return {above - m.sf(z) * eh, kernel_side(m, h, z, opt)};
}

TkTransform::TkTransform(const Measure& m, DifferentiableFunction h, double k) : h_(std::move(h)), k_(k)
{
    if (!std::isfinite(k)) throw DomainError("T_k split point must be finite");
    auto fn = h_;
    cumulative_ = std::make_shared<const CumulativeIntegral>(
        m, [fn](const Level& lv) { return fn(lv.x); }, std::vector<double>(h_.knots().begin(), h_.knots().end()));
}

double TkTransform::at_level(const Level& level) const
{
    const Level lv = clamp_level(measure(), level);
    if (lv.x <= k_) return cumulative_->lower(lv) / lv.lower;
    return cumulative_->upper(lv) / lv.upper;
}

double TkTransform::operator()(double x) const { return at_level(level_of(measure(), x)); }

std::vector<double> TkTransform::knots() const
{
    auto out = std::vector<double>(h_.knots().begin(), h_.knots().end());
    if (measure().support().contains(k_)) out.push_back(k_);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

TkTransform t_transform(const Measure& m, const DifferentiableFunction& h, double k) { return {m, h, k}; }

double t_norm(const TkTransform& t, double p)
{
    const auto knots = t.knots();
    if (std::isinf(p) && p > 0) {
        return sup_abs_over_levels(t.measure(), [&t](const Level& lv) { return t.at_level(lv); }, knots).value;
    }
    if (!(p >= 1.0)) throw DomainError("t_norm requires p >= 1");
    const double ip = integrate_dF(
        t.measure(), [&t, p](const Level& lv) { return std::pow(std::abs(t.at_level(lv)), p); }, -INFINITY, INFINITY,
        knots);
    return std::pow(ip, 1.0 / p);
}

double t_norm(const Measure& m, const DifferentiableFunction& h, double k, double p)
{
    return t_norm(TkTransform(m, h, k), p);
}

InequalityCertificate hardy_certificate(const Measure& m, const DifferentiableFunction& h, double k, double p,
                                        double tol)
{
    if (!(p > 1.0) || std::isinf(p))
        throw DomainError("Hardy inequality requires finite p > 1 (the constant p/(p-1) blows up at p = 1)");
    InequalityCertificate c;
    c.name = "hardy";
    c.family = m.describe();
    c.p = p;
    c.params = {{"p", p}, {"k", k}};
    c.labels = {{"h", h.label()}};
    c.lhs = t_norm(m, h, k, p);
    const double hp = lp_norm(m, h, p);
    c.rhs = p / (p - 1.0) * hp;
    c.side_conditions["h_norm"] = hp;
    finalize(c, tol);
    return c;
}

void write_tk_csv(std::ostream& out, const TkTransform& t, int points)
{
    out << "t,x,Tkh\n";
    char buf[128];
    for (int i = 1; i <= points; ++i) {
        const double q = static_cast<double>(i) / (points + 1);
        const double x = t.measure().quantile(q);
        std::snprintf(buf, sizeof buf, "%.10g,%.10g,%.10g\n", q, x, t(x));
        out << buf;
    }
}

} // namespace cheeger
