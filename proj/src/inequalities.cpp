#include "cheeger/inequalities.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "cheeger/errors.hpp"
#include "cheeger/integrate.hpp"
#include "cheeger/isoperimetry.hpp"
#include "cheeger/kernel.hpp"
#include "cheeger/roots.hpp"

namespace cheeger {

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();
constexpr double hypothesis_tolerance = 1e-6;

InequalityCertificate start(const std::string& name, const Measure& m)
{
    InequalityCertificate c;
    c.name = name;
    c.family = m.describe();
    return c;
}

// c / Is, +infinity when Is = 0.
double over_is(double c, double is) { return is > 0.0 ? c / is : inf; }

double abs_cov(const Measure& m, const DifferentiableFunction& g, const DifferentiableFunction& h)
{
    return std::abs(covariance_direct(m, g, h));
}

double deriv_norm(const Measure& m, const DifferentiableFunction& g, double p)
{
    if (g.constant_value()) return 0.0;
    return derivative_lp_norm(m, g, p);
}

DifferentiableFunction derivative_function(const DifferentiableFunction& g)
{
    if (g.constant_value()) return constant(0.0);
    return {[g](double x) { return g.derivative(x); },
            [](double) { return std::numeric_limits<double>::quiet_NaN(); },
            std::vector<double>(g.knots().begin(), g.knots().end()),
            FunctionKind::custom,
            "d(" + g.label() + ")",
            Growth{false, std::max(0.0, g.growth().exponent - 1.0), g.growth().positive_domain}};
}

std::vector<double> with_knot(std::span<const double> knots, const Measure& m, double x)
{
    std::vector<double> out(knots.begin(), knots.end());
    if (m.support().contains(x)) out.push_back(x);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

double conjugate(double p) { return p / (p - 1.0); }

void require_open_p(double p, const char* what)
{
    if (!(p > 1.0) || std::isinf(p)) throw DomainError(std::string(what) + " requires 1 < p < infinity");
}

void require_centered(const Measure& m, const char* what)
{
    const auto x = identity();
    const double mean = expectation(m, x);
    const double l1 = lp_norm(m, x, 1.0);
    if (std::abs(mean) > 1e-9 * (1.0 + l1)) {
        std::ostringstream os;
        os << what << " requires a centered measure (E X = " << mean << ")";
        throw DomainError(os.str());
    }
}

bool monotone_builder(const DifferentiableFunction& g)
{
    switch (g.kind()) {
    case FunctionKind::monomial: return std::fmod(g.growth().exponent, 2.0) == 1.0;
    case FunctionKind::power:
    case FunctionKind::signed_power:
    case FunctionKind::affine: return true;
    default: return false;
    }
}

} // namespace

double isoperimetric_value(const Measure& m) { return isoperimetric_constant(m).is_value; }

double pushforward_median(const Measure& m, const DifferentiableFunction& g)
{
    if (auto c = g.constant_value()) return *c;
    if (monotone_builder(g)) return g(m.median());
    // range of g over a dense quantile grid, then minimise the convex map c -> E|g - c|
    double lo = inf, hi = -inf;
    for (int i = 1; i < 512; ++i) {
        const double v = g(m.quantile(i / 512.0));
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    if (!(hi > lo)) return lo;
    // root of the (monotone) derivative P(g < c) - P(g > c); minimising E|g - c| directly only
    // locates the flat bottom to about the square root of the quadrature tolerance
    auto slope = [&](double c) {
        return integrate_dF(m, [&](const Level& lv) { const double d = c - g(lv.x); return d > 0 ? 1.0 : d < 0 ? -1.0 : 0.0; },
                            -INFINITY, INFINITY, g.knots());
    };
    return bisect_increasing(slope, lo, hi, 80);
}

InequalityCertificate check_cov_l1_linf(const Measure& m, const DifferentiableFunction& g,
                                        const DifferentiableFunction& h, double tol)
{
    auto c = start("cov_l1_linf", m);
    c.labels = {{"g", g.label()}, {"h", h.label()}};
    c.lhs = abs_cov(m, g, h);
    const double is = isoperimetric_value(m);
    const double dg = deriv_norm(m, g, 1.0);
    const double med = m.median();
    const double tsup = t_norm(m, centered(h, m), med, inf);
    c.side_conditions = {{"Is", is}, {"|g'|_1", dg}, {"|T_m h0|_inf", tsup}, {"g_bounded", g.growth().bounded ? 1 : 0}};
    c.rhs = over_is(1.0, is) * dg * tsup;
    finalize(c, tol);
    return c;
}

InequalityCertificate check_cov_lp_lq_T(const Measure& m, const DifferentiableFunction& g,
                                        const DifferentiableFunction& h, double p, double tol)
{
    require_open_p(p, "cov_lp_lq_T");
    const double q = conjugate(p);
    auto c = start("cov_lp_lq_T", m);
    c.p = p;
    c.params = {{"p", p}, {"q", q}};
    c.labels = {{"g", g.label()}, {"h", h.label()}};
    c.lhs = abs_cov(m, g, h);
    const double is = isoperimetric_value(m);
    const double dg = deriv_norm(m, g, p);
    const double tq = t_norm(m, centered(h, m), m.median(), q);
    c.side_conditions = {{"Is", is}, {"|g'|_p", dg}, {"|T_m h0|_q", tq}};
    c.rhs = over_is(1.0, is) * dg * tq;
    finalize(c, tol);
    return c;
}

InequalityCertificate check_cov_lp_lq(const Measure& m, const DifferentiableFunction& g,
                                      const DifferentiableFunction& h, double p, double tol)
{
    if (!(p >= 1.0) || std::isinf(p)) throw DomainError("cov_lp_lq requires 1 <= p < infinity");
    auto c = start("cov_lp_lq", m);
    c.p = p;
    c.labels = {{"g", g.label()}, {"h", h.label()}};
    c.lhs = abs_cov(m, g, h);
    const double is = isoperimetric_value(m);
    const double dg = deriv_norm(m, g, p);
    const auto h0 = centered(h, m);
    double hq;
    if (p == 1.0) {
        hq = sup_norm(m, h0);
        c.params = {{"p", 1.0}, {"q", inf}};
    } else {
        hq = lp_norm(m, h0, conjugate(p));
        c.params = {{"p", p}, {"q", conjugate(p)}};
    }
    c.side_conditions = {{"Is", is}, {"|g'|_p", dg}, {"|h0|_q", hq}};
    c.rhs = over_is(p, is) * dg * hq;
    finalize(c, tol);
    return c;
}

InequalityCertificate check_cheeger(const Measure& m, const DifferentiableFunction& g, double tol)
{
    auto c = start("cheeger", m);
    c.p = 2.0;
    c.params = {{"p", 2.0}};
    c.labels = {{"g", g.label()}};
    c.lhs = g.constant_value() ? 0.0 : covariance_direct(m, g, g);
    const double is = isoperimetric_value(m);
    const double dg = deriv_norm(m, g, 2.0);
    c.side_conditions = {{"Is", is}, {"|g'|_2", dg}};
    c.rhs = is > 0.0 ? 4.0 / (is * is) * dg * dg : inf;
    finalize(c, tol);
    return c;
}

InequalityCertificate check_cov_final(const Measure& m, const DifferentiableFunction& g,
                                      const DifferentiableFunction& h, double p, double tol)
{
    require_open_p(p, "cov_final");
    const double q = conjugate(p);
    auto c = start("cov_final", m);
    c.p = p;
    c.params = {{"p", p}, {"q", q}};
    c.labels = {{"g", g.label()}, {"h", h.label()}};
    c.lhs = abs_cov(m, g, h);
    const double is = isoperimetric_value(m);
    const double dg = deriv_norm(m, g, p);
    const double dh = deriv_norm(m, h, q);
    c.side_conditions = {{"Is", is}, {"|g'|_p", dg}, {"|h'|_q", dh}};
    c.rhs = is > 0.0 ? 2.0 * (p + q) / (is * is) * dg * dh : inf;
    finalize(c, tol);
    return c;
}

InequalityCertificate check_brascamp_lieb(const Measure& m, const DifferentiableFunction& g,
                                          const DifferentiableFunction& h, double tol)
{
    if (!m.has_potential_curvature())
        throw UnsupportedMeasure(m.describe() + " has no positive potential curvature phi''");
    auto c = start("brascamp_lieb", m);
    c.labels = {{"g", g.label()}, {"h", h.label()}};
    c.lhs = abs_cov(m, g, h);
    const double dg = deriv_norm(m, g, 1.0);
    double sup = 0.0;
    if (!h.constant_value()) {
        sup = sup_abs_over_levels(
                  m,
                  [&](const Level& lv) {
                      const double curv = m.potential_second_derivative(lv.x);
                      return curv > 0.0 ? h.derivative(lv.x) / curv : 0.0;
                  },
                  h.knots())
                  .value;
    }
    c.side_conditions = {{"|g'|_1", dg}, {"sup|h'/phi''|", sup}};
    c.rhs = dg * sup;
    finalize(c, tol);
    return c;
}

std::string to_string(Side s) { return s == Side::left ? "left" : "right"; }

InequalityCertificate check_cov_variant(const Measure& m, const DifferentiableFunction& g,
                                        const DifferentiableFunction& h, Side side, double tol)
{
    auto c = start("cov_variant", m);
    c.labels = {{"g", g.label()}, {"h", h.label()}, {"side", to_string(side)}};
    c.lhs = abs_cov(m, g, h);
    const double dg = deriv_norm(m, g, 1.0);
    double sup = 0.0;
    if (!h.constant_value()) {
        const CumulativeIntegral cum(m, [&h](const Level& lv) { return h(lv.x); },
                                     std::vector<double>(h.knots().begin(), h.knots().end()));
        const double eh = cum.total();
        // Both forms are evaluated from the tail nearest to x, where they are free of cancellation.
        auto functional = [&](const Level& lv) {
            if (!(lv.pdf > 0.0)) return 0.0;
            const bool from_left = side == Side::left ? lv.lower <= 0.5 : lv.upper > 0.5;
            const double psi = from_left ? lv.lower * eh - cum.lower(lv) : cum.upper(lv) - lv.upper * eh;
            return psi / lv.pdf;
        };
        sup = sup_abs_over_levels(m, functional, h.knots()).value;
    }
    c.side_conditions = {{"|g'|_1", dg}, {"sup_functional", sup}};
    c.rhs = dg * sup;
    finalize(c, tol);
    return c;
}

std::string to_string(PoincareVariant v)
{
    switch (v) {
    case PoincareVariant::centered_2p: return "centered_2p";
    case PoincareVariant::centered_p: return "centered_p";
    case PoincareVariant::raw_2p: return "raw_2p";
    case PoincareVariant::raw_p: return "raw_p";
    }
    return "?";
}

std::optional<PoincareVariant> parse_poincare_variant(const std::string& s)
{
    for (auto v : {PoincareVariant::centered_2p, PoincareVariant::centered_p, PoincareVariant::raw_2p,
                   PoincareVariant::raw_p})
        if (to_string(v) == s) return v;
    return std::nullopt;
}

InequalityCertificate check_lp_poincare(const Measure& m, const DifferentiableFunction& u, double p,
                                        PoincareVariant variant, double tol)
{
    if (!(p >= 1.0) || std::isinf(p)) throw DomainError("lp_poincare requires 1 <= p < infinity");
    auto c = start("lp_poincare", m);
    c.p = p;
    c.params = {{"p", p}};
    c.labels = {{"u", u.label()}, {"variant", to_string(variant)}};

    const bool odd_integer = p == std::floor(p) && std::fmod(p, 2.0) == 1.0;
    const double eu = expectation(m, u);
    const auto knots = with_knot(u.knots(), m, 0.0);
    auto moment = [&](auto&& fn) {
        if (auto cv = u.constant_value()) return fn(*cv);
        return integrate_dF(m, [&](const Level& lv) { return fn(u(lv.x)); }, -INFINITY, INFINITY, knots);
    };
    const double centered_sign_moment =
        moment([&](double v) { return sign(v - eu) * std::pow(std::abs(v - eu), p - 1.0); });
    const double centered_abs = moment([&](double v) { return std::pow(std::abs(v - eu), p - 1.0); });
    const double signed_p_moment = moment([&](double v) { return sign(v) * std::pow(std::abs(v), p); });
    const double abs_p_moment = moment([&](double v) { return std::pow(std::abs(v), p); });
    const double sign_moment = moment([&](double v) { return v == 0.0 ? 0.0 : sign(v); });
    c.side_conditions = {{"E[sign(u-Eu)|u-Eu|^(p-1)]", centered_sign_moment},
                         {"E[u^p]", signed_p_moment},
                         {"E[sign(u^p)]", sign_moment},
                         {"p_odd_integer", odd_integer ? 1.0 : 0.0},
                         {"Eu", eu}};

    auto require = [](bool ok, const std::string& what, double value) {
        if (!ok) throw HypothesisViolated(what, value);
    };
    const bool centered_variant = variant == PoincareVariant::centered_2p || variant == PoincareVariant::centered_p;
    if (variant == PoincareVariant::centered_p)
        require(std::abs(centered_sign_moment) <= hypothesis_tolerance * std::max(1.0, centered_abs),
                "E[sign(u-Eu)|u-Eu|^(p-1)] = 0", centered_sign_moment);
    if (variant == PoincareVariant::raw_2p || variant == PoincareVariant::raw_p) {
        require(odd_integer, "p odd integer", p);
        require(std::abs(signed_p_moment) <= hypothesis_tolerance * std::max(1.0, abs_p_moment), "E[u^p] = 0",
                signed_p_moment);
    }
    if (variant == PoincareVariant::raw_p)
        require(std::abs(sign_moment) <= hypothesis_tolerance, "E[sign(u^p)] = 0", sign_moment);

    c.lhs = centered_variant ? std::pow(moment([&](double v) { return std::pow(std::abs(v - eu), p); }), 1.0 / p)
                             : std::pow(abs_p_moment, 1.0 / p);
    const double is = isoperimetric_value(m);
    const double du = deriv_norm(m, u, p);
    const double constant_factor =
        variant == PoincareVariant::centered_2p || variant == PoincareVariant::raw_2p ? 2.0 * p : p;
    c.side_conditions["Is"] = is;
    c.side_conditions["|u'|_p"] = du;
    c.rhs = over_is(constant_factor, is) * du;
    finalize(c, tol);
    return c;
}

std::vector<InequalityCertificate> sharpness_sweep(const Measure& m, double p, const std::vector<int>& k_values,
                                                   PoincareVariant variant, double tol)
{
    std::vector<InequalityCertificate> out;
    for (int k : k_values) {
        auto c = check_lp_poincare(m, monomial(k), p, variant, tol);
        c.params["k"] = k;
        out.push_back(std::move(c));
    }
    // the ratio is expected to increase with k toward 1 on Laplace measures
    bool monotone = true;
    for (std::size_t i = 1; i < out.size(); ++i)
        monotone = monotone && out[i].ratio >= out[i - 1].ratio * (1.0 - 1e-9);
    for (auto& c : out) c.side_conditions["sweep_monotone"] = monotone ? 1.0 : 0.0;
    return out;
}

InequalityCertificate check_mean_median_sandwich(const Measure& m, const DifferentiableFunction& g, double tol)
{
    auto c = start("mean_median_sandwich", m);
    c.labels = {{"g", g.label()}};
    double lower = 0.0, upper = 0.0, med = 0.0, mean = 0.0;
    if (auto cv = g.constant_value()) {
        med = mean = *cv;
    } else {
        med = pushforward_median(m, g);
        mean = expectation(m, g);
        const auto knots = with_knot(g.knots(), m, m.median());
        auto mad = [&](double center) {
            return integrate_dF(m, [&](const Level& lv) { return std::abs(g(lv.x) - center); }, -INFINITY,
                                INFINITY, knots);
        };
        lower = mad(med);
        upper = mad(mean);
    }
    c.side_conditions = {{"median", med}, {"mean", mean}, {"E|g-med|", lower}};
    c.lhs = upper;
    c.rhs = 2.0 * lower;
    finalize(c, tol);
    if (c.pass && lower > upper * (1.0 + tol) + 1e-15) {
        c.pass = false;
        c.status = "fail";
    }
    return c;
}

std::string to_string(Centering c) { return c == Centering::median_centered ? "median_centered" : "mean_centered"; }

std::optional<Centering> parse_centering(const std::string& s)
{
    if (s == "median_centered") return Centering::median_centered;
    if (s == "mean_centered") return Centering::mean_centered;
    return std::nullopt;
}

InequalityCertificate check_orlicz(const Measure& m, const DifferentiableFunction& f, const YoungFunction& n,
                                   Centering which, double tol)
{
    const auto cn = young_cn(n);
    if (cn.infinite) throw DomainError("Orlicz inequality requires a finite C_N (" + n.label() + " has C_N = inf)");
    auto c = start("orlicz", m);
    c.labels = {{"f", f.label()}, {"N", n.label()}, {"centering", to_string(which)}};
    c.params = {{"C_N", cn.value}};
    const auto f0 = which == Centering::median_centered ? shifted(f, f(m.median())) : centered(f, m);
    c.lhs = orlicz_norm(m, f0, n);
    const double is = isoperimetric_value(m);
    const double df = orlicz_norm(m, derivative_function(f), n);
    const double factor = which == Centering::median_centered ? cn.value : 2.0 * cn.value;
    c.side_conditions = {{"Is", is}, {"C_N", cn.value}, {"|f'|_N", df}};
    c.rhs = over_is(factor, is) * df;
    finalize(c, tol);
    return c;
}

InequalityCertificate check_moment_growth(const Measure& m, double p, double tol)
{
    if (!(p >= 1.0) || std::isinf(p)) throw DomainError("moment_growth requires 1 <= p < infinity");
    auto c = start("moment_growth", m);
    c.p = p;
    c.params = {{"p", p}};
    c.lhs = lp_norm(m, centered(identity(), m), p);
    const double is = isoperimetric_value(m);
    c.side_conditions = {{"Is", is}, {"c_p", over_is(p, is)}};
    c.rhs = 2.0 * over_is(p, is);
    finalize(c, tol);
    return c;
}

InequalityCertificate check_psi1_bound(const Measure& m, double tol)
{
    auto c = start("psi1_bound", m);
    c.lhs = orlicz_norm(m, centered(identity(), m), YoungFunction::psi1());
    const double is = isoperimetric_value(m);
    c.side_conditions = {{"Is", is}};
    c.rhs = over_is(4.0, is);
    finalize(c, tol);
    return c;
}

InequalityCertificate check_moment_comparison(const Measure& m, double p, double tol)
{
    if (p == 1.0) throw DomainError("moment comparison does not allow p = 1 (the constant p^2/(p-1) is infinite)");
    if (!(p > 1.0) || std::isinf(p)) throw DomainError("moment comparison requires 1 < p < infinity");
    require_centered(m, "moment comparison");
    auto c = start("moment_comparison", m);
    c.p = p;
    c.params = {{"p", p}};
    const auto x = identity();
    const double np = lp_norm(m, x, p);
    c.lhs = lp_norm(m, x, p + 1.0);
    const double is_scaled = isoperimetric_value(m.rescale(np));
    c.side_conditions = {{"|X|_p", np}, {"Is_rescaled", is_scaled}};
    c.rhs = is_scaled > 0.0 ? std::pow(p * p / ((p - 1.0) * is_scaled), 1.0 / (p + 1.0)) * np : inf;
    finalize(c, tol);
    return c;
}

InequalityCertificate check_logconcave_moments(const Measure& m, double p, double tol)
{
    if (m.log_concavity() == LogConcavity::none)
        throw UnsupportedMeasure(m.describe() + " is not flagged log-concave");
    if (!(p >= 2.0) || std::isinf(p)) throw DomainError("log-concave moment bound requires 2 <= p < infinity");
    require_centered(m, "log-concave moment bound");
    auto c = start("logconcave_moments", m);
    c.p = p;
    c.params = {{"p", p}};
    const auto x = identity();
    const double np = lp_norm(m, x, p);
    c.lhs = lp_norm(m, x, p + 1.0);
    c.rhs = std::pow(std::sqrt(3.0) * p * p / (p - 1.0), 1.0 / (p + 1.0)) * np;
    c.side_conditions = {{"|X|_p", np}};
    if (p == 2.0) {
        const double third = std::pow(c.lhs, 3.0);
        const double bound = 4.0 * std::sqrt(3.0) * std::pow(np, 3.0);
        c.side_conditions["E|X|^3"] = third;
        c.side_conditions["4sqrt3(EX^2)^(3/2)"] = bound;
    }
    finalize(c, tol);
    return c;
}

double cp_constant(double p)
{
    if (!(p > 1.0) || std::isinf(p)) throw DomainError("C_p requires 1 < p < infinity");
    return p / (p + 1.0) * std::pow(std::sqrt(3.0) * p * p / (p - 1.0), 1.0 / (p + 1.0));
}

std::vector<double> cp_sequence(const std::vector<double>& p_values)
{
    std::vector<double> out;
    out.reserve(p_values.size());
    for (double p : p_values) out.push_back(cp_constant(p));
    for (std::size_t i = 1; i < out.size(); ++i) {
        if (p_values[i] > p_values[i - 1] && !(out[i] < out[i - 1])) {
            std::ostringstream os;
            os << "C_p is not strictly decreasing between p = " << p_values[i - 1] << " and p = " << p_values[i];
            throw ComputationError(os.str());
        }
    }
    return out;
}

BestConstantEstimate estimate_best_constant(const Measure& m, const std::optional<DifferentiableFunction>& g,
                                            const std::vector<double>& deltas)
{
    if (deltas.size() < 2) throw DomainError("estimate_best_constant needs at least two ramp widths");
    for (std::size_t i = 0; i < deltas.size(); ++i) {
        if (!(deltas[i] > 0.0)) throw DomainError("ramp widths must be positive");
        if (i > 0 && !(deltas[i] < deltas[i - 1])) throw DomainError("ramp widths must be strictly decreasing");
    }
    BestConstantEstimate est;
    est.deltas = deltas;
    const auto profile = isoperimetric_constant(m);
    est.target = profile.is_value > 0.0 ? 1.0 / profile.is_value : inf;
    const double med = m.median();

    if (g) {
        est.mode = g->label();
        est.center = med;
    } else {
        est.mode = "extremal";
        // prefer the median when it attains the infimum (constant profiles such as Laplace)
        const double at_median = isoperimetric_ratio_at_level(m, 0.5);
        est.center = at_median <= profile.is_value * (1.0 + 1e-9) ? med : profile.argmin_x;
    }

    for (double delta : deltas) {
        const auto h = ramp({est.center, delta});
        const auto& gg = g ? *g : h;
        const double cov = std::abs(covariance_direct(m, gg, h));
        const double dg = derivative_lp_norm(m, gg, 1.0);
        const double tsup = t_norm(m, centered(h, m), med, inf);
        est.ratios.push_back(cov / (dg * tsup));
    }
    est.monotone = true;
    for (std::size_t i = 1; i < est.ratios.size(); ++i)
        est.monotone = est.monotone && est.ratios[i] >= est.ratios[i - 1] * (1.0 - 1e-12);
    if (est.monotone) {
        const std::size_t n = est.ratios.size();
        const double r1 = est.ratios[n - 2], r2 = est.ratios[n - 1];
        const double d1 = deltas[n - 2], d2 = deltas[n - 1];
        est.limit_estimate = r2 + (r2 - r1) * d2 / (d1 - d2);
    } else {
        est.limit_estimate = std::numeric_limits<double>::quiet_NaN();
    }
    return est;
}

} // namespace cheeger
