// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "cheeger/config.hpp"
#include "cheeger/errors.hpp"
#include "cheeger/inequalities.hpp"
#include "cheeger/isoperimetry.hpp"
#include "cheeger/kernel.hpp"
#include "cheeger/runner.hpp"

using namespace cheeger;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

void report(int id, const std::string& title, bool ok, const std::string& detail, double seconds)
{
    std::printf("criterion %2d %-4s %-34s %s [%.2fs]\n", id, ok ? "PASS" : "FAIL", title.c_str(), detail.c_str(),
                seconds);
    std::fflush(stdout);
    if (!ok) ++failures;
}

std::string fmt(const char* f, auto... args)
{
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

bool near(double a, double b, double tol) { return std::abs(a - b) <= tol; }

double elapsed(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::vector<Measure> families()
{
    return {Measure::gaussian(0, 1), Measure::laplace(0, 1), Measure::exponential(1), Measure::uniform(0, 1),
            Measure::logistic(0, 1), Measure::beta(2, 5)};
}

std::vector<DifferentiableFunction> builders(const Measure& m)
{
    return {identity(), monomial(3), signed_power(1.5), ramp({m.median(), 0.5}), abs_power(2.5)};
}

void criterion1()
{
    const auto t0 = Clock::now();
    struct Case {
        Measure m;
        double target, tol;
    };
    const std::vector<Case> cases{{Measure::laplace(0, 1), 1.0, 1e-6},
                                  {Measure::uniform(0, 1), 2.0, 1e-6},
                                  {Measure::gaussian(0, 1), 0.7978846, 1e-5},
                                  {Measure::exponential(1), 1.0, 1e-6}};
    bool ok = true;
    std::string detail;
    double slowest = 0;
    for (const auto& c : cases) {
        const auto t = Clock::now();
        const double v = isoperimetric_constant(c.m).is_value;
        slowest = std::max(slowest, elapsed(t));
        ok = ok && near(v, c.target, c.tol);
        detail += fmt("%s=%.9f ", c.m.describe().c_str(), v);
    }
    ok = ok && slowest < 1.0;
    report(1, "isoperimetric constants", ok, detail + fmt("max %.3fs", slowest), elapsed(t0));
}

void criterion2()
{
    const auto t0 = Clock::now();
    int combos = 0, bad = 0;
    double worst = 0;
    for (const auto& m : families()) {
        auto fs = builders(m);
        for (auto& f : random_battery(m, 2024, 2)) fs.push_back(f);
        // ordered pairs (g, h), g != h, plus the diagonal of the first few
        for (std::size_t i = 0; i < fs.size(); ++i)
            for (std::size_t j = i; j < fs.size() && j < i + 2; ++j) {
                const double d = covariance_direct(m, fs[i], fs[j]);
                const double k = covariance_kernel(m, fs[i], fs[j]);
                const double err = std::abs(d - k) / (1 + std::abs(d));
                worst = std::max(worst, err);
                if (err > 1e-6) ++bad;
                ++combos;
            }
    }
    const double secs = elapsed(t0);
    report(2, "kernel representation", combos >= 60 && bad == 0 && secs < 20.0,
           fmt("%d combos, %d off, worst rel %.2e", combos, bad, worst), secs);
}

void criterion3()
{
    const auto t0 = Clock::now();
    int points = 0, bad = 0;
    double worst = 0;
    for (const auto& m : families()) {
        for (int i = 0; i < 20; ++i) {
            const double z = m.quantile((i + 0.5) / 20.0);
            const auto h = i % 2 ? monomial(3) : identity();
            for (const auto& ti : {tail_identity_left(m, h, z), tail_identity_right(m, h, z)}) {
                const double err = std::abs(ti.direct - ti.kernel) / std::max(1e-300, std::abs(ti.direct));
                worst = std::max(worst, err);
                if (err > 1e-6) ++bad;
            }
            ++points;
        }
    }
    const auto U = Measure::uniform(0, 1);
    const auto l = tail_identity_left(U, identity(), 0.5);
    const auto r = tail_identity_right(U, identity(), 0.5);
    const bool anchor = near(l.direct, 0.125, 1e-9) && near(l.kernel, 0.125, 1e-9) && near(r.direct, 0.125, 1e-9) &&
                        near(r.kernel, 0.125, 1e-9);
    report(3, "tail identities", bad == 0 && anchor,
           fmt("%d points, worst rel %.2e, uniform z=0.5: %.9f %.9f", points, worst, l.direct, l.kernel),
           elapsed(t0));
}

void criterion4()
{
    const auto t0 = Clock::now();
    int runs = 0, violations = 0;
    for (const auto& m : families())
        for (const auto& h : builders(m))
            for (double p : {1.5, 2.0, 3.0, 5.0}) {
                ++runs;
                if (!hardy_certificate(m, h, m.median(), p).pass) ++violations;
            }
    const auto U = Measure::uniform(0, 1);
    const double r1 = hardy_certificate(U, power(-0.25), 1.0, 2.0).ratio;
    const double r2 = hardy_certificate(U, power(-0.45), 1.0, 2.0).ratio;
    const bool ok = violations == 0 && near(r1, 2.0 / 3.0, 1e-6) && near(r2, 1.0 / 1.1, 1e-4);
    report(4, "Hardy suite", ok, fmt("%d runs, %d violations, ratios %.7f %.7f", runs, violations, r1, r2),
           elapsed(t0));
}

void criterion5()
{
    const auto t0 = Clock::now();
    const auto L = Measure::laplace(0, 1);
    bool ok = true;
    std::string detail = "p=1:";
    for (int k : {1, 3, 5, 7}) {
        const double r = check_lp_poincare(L, monomial(k), 1.0, PoincareVariant::raw_p).ratio;
        ok = ok && near(r, 1.0, 1e-6);
        detail += fmt(" %.7f", r);
    }
    const auto s = sharpness_sweep(L, 2.0, {1, 3, 5}, PoincareVariant::centered_p);
    const double want[3] = {std::sqrt(0.5), std::sqrt(5.0 / 6.0), std::sqrt(0.9)};
    detail += " p=2:";
    for (int i = 0; i < 3; ++i) {
        ok = ok && near(s[i].ratio, want[i], 1e-5);
        detail += fmt(" %.5f", s[i].ratio);
    }
    ok = ok && s[0].ratio < s[1].ratio && s[1].ratio < s[2].ratio && s[2].ratio < 1.0;
    report(5, "Lp-Poincare sharpness", ok, detail, elapsed(t0));
}

void criterion6()
{
    const auto t0 = Clock::now();
    const std::vector<double> deltas{1e-1, 1e-2, 1e-3};
    const auto L = estimate_best_constant(Measure::laplace(0, 1), std::nullopt, deltas);
    const auto U = estimate_best_constant(Measure::uniform(0, 1), std::nullopt, deltas);
    const bool ok = L.monotone && U.monotone && std::abs(L.limit_estimate - 1.0) <= 0.02 * 1.0 &&
                    std::abs(U.limit_estimate - 0.5) <= 0.02 * 0.5;
    report(6, "best-constant optimality", ok,
           fmt("laplace %.4f,%.4f,%.4f -> %.6f; uniform %.4f,%.4f,%.4f -> %.6f", L.ratios[0], L.ratios[1],
               L.ratios[2], L.limit_estimate, U.ratios[0], U.ratios[1], U.ratios[2], U.limit_estimate),
           elapsed(t0));
}

void criterion7()
{
    const auto t0 = Clock::now();
    const auto G = Measure::gaussian(0, 1);
    const double bl = check_brascamp_lieb(G, identity(), identity()).ratio;
    const double cl = check_cov_variant(G, identity(), identity(), Side::left).ratio;
    const double cr = check_cov_variant(G, identity(), identity(), Side::right).ratio;
    const bool ok = near(bl, 1.0, 1e-6) && near(cl, 1.0, 1e-6) && near(cr, 1.0, 1e-6);
    report(7, "equality witnesses", ok, fmt("brascamp-lieb %.9f, variant %.9f / %.9f", bl, cl, cr), elapsed(t0));
}

void criterion8()
{
    const auto t0 = Clock::now();
    const auto L = Measure::laplace(0, 1);
    const auto mc = check_moment_comparison(L, 2.0);
    const auto lc = check_logconcave_moments(L, 2.0);
    const double e3 = lc.side_conditions.at("E|X|^3");
    const double b3 = lc.side_conditions.at("4sqrt3(EX^2)^(3/2)");
    const auto cp = cp_sequence({2, 3, 5, 10, 100, 1000});
    bool decreasing = true;
    for (std::size_t i = 1; i < cp.size(); ++i) decreasing = decreasing && cp[i] < cp[i - 1];
    bool psi = true;
    for (const auto& m : {L, Measure::uniform(0, 1), Measure::exponential(1)}) psi = psi && check_psi1_bound(m).pass;
    const bool ok = near(mc.lhs, std::cbrt(6.0), 1e-5) && near(mc.rhs, 2.0, 1e-5) && mc.pass && near(e3, 6.0, 1e-6) &&
                    near(b3, 19.5959, 1e-4) && e3 <= b3 && near(cp[0], 1.27091, 1e-5) && decreasing &&
                    cp.back() < 1.01 && psi;
    report(8, "moment suite", ok,
           fmt("lhs %.6f rhs %.6f, E|X|^3 %.4f <= %.4f, C_2 %.6f, C_1000 %.6f, psi1 %s", mc.lhs, mc.rhs, e3, b3, cp[0],
               cp.back(), psi ? "ok" : "fail"),
           elapsed(t0));
}

template <class E>
bool throws(const std::function<void()>& f)
{
    try {
        f();
    } catch (const E&) {
        return true;
    } catch (...) {
        return false;
    }
    return false;
}

void criterion9()
{
    const auto t0 = Clock::now();
    auto cfg = default_config({{"laplace:0,1", Measure::laplace(0, 1)}});
    cfg.rhs_scale = 0.1;
    const auto r = run(cfg);
    int fails = 0;
    for (const auto& row : r.rows) fails += row.status == "fail";
    const bool mc = throws<DomainError>([] { (void)check_moment_comparison(Measure::laplace(0, 1), 1.0); });
    const bool sp = throws<DomainError>([] { (void)signed_power(0.5); });
    const bool ap = throws<DomainError>([] { (void)abs_power(0.5); });
    const bool ok = r.exit_code == exit_certificate_failure && fails > 0 && mc && sp && ap;
    report(9, "negative controls", ok,
           fmt("scaled rhs: %d failures, exit %d; domain errors %d%d%d", fails, r.exit_code, mc, sp, ap), elapsed(t0));
}

void criterion10()
{
    const auto t0 = Clock::now();
    auto cfg = default_config({{"laplace:0,1", Measure::laplace(0, 1)}, {"gaussian:0,1", Measure::gaussian(0, 1)}});
    cfg.seed = 12345;
    cfg.random_functions = 4;
    std::string reports[3];
    for (int i = 0; i < 3; ++i) {
        std::ostringstream os;
        write_report(cfg, run(cfg, i == 0 ? 1 : 0), os);
        reports[i] = os.str();
    }
    cfg.format = "json";
    std::string js[2];
    for (auto& j : js) {
        std::ostringstream os;
        write_report(cfg, run(cfg), os);
        j = os.str();
    }
    const bool ok = reports[0] == reports[1] && reports[1] == reports[2] && js[0] == js[1] && !reports[0].empty();
    report(10, "determinism", ok, fmt("csv %zu bytes x3, json %zu bytes x2", reports[0].size(), js[0].size()),
           elapsed(t0));
}

} // namespace

int main()
{
    const auto t0 = Clock::now();
    const std::vector<void (*)()> all{criterion1, criterion2, criterion3, criterion4, criterion5,
                                      criterion6, criterion7, criterion8, criterion9, criterion10};
    for (std::size_t i = 0; i < all.size(); ++i) {
        try {
            all[i]();
        } catch (const std::exception& e) {
            report(int(i + 1), "exception", false, e.what(), 0.0);
        }
    }
    const double total = elapsed(t0);
    std::printf("total %.2fs (budget 120s)\n", total);
    if (total > 120.0) ++failures;
    return failures ? 1 : 0;
}
