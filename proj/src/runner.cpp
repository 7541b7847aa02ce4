#include "cheeger/runner.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <random>
#include <string>
#include <thread>

#include "cheeger/errors.hpp"
#include "cheeger/expr.hpp"
#include "cheeger/inequalities.hpp"
#include "cheeger/isoperimetry.hpp"
#include "cheeger/kernel.hpp"
#include "cheeger/quadrature.hpp"
#include "cheeger/report.hpp"

namespace cheeger {

namespace {

constexpr double nan = std::numeric_limits<double>::quiet_NaN();

struct Task {
    InequalityCertificate proto; ///< identity of the cell, used when it throws
    std::function<std::vector<InequalityCertificate>()> fn;
};

struct NamedFunction {
    std::string label;
    std::function<DifferentiableFunction(const Measure&)> make;
};

template <class T>
std::vector<T> or_default(const std::vector<T>& v, std::vector<T> dflt)
{
    return v.empty() ? std::move(dflt) : v;
}

InequalityCertificate proto(const std::string& name, const MeasureEntry* me)
{
    InequalityCertificate c;
    c.name = name;
    c.family = me ? me->measure.describe() : "none";
    return c;
}

// A function only defined on x > 0 cannot be used on a measure charging the negative axis.
DifferentiableFunction checked(const DifferentiableFunction& f, const Measure& m)
{
    if (f.growth().positive_domain && m.support().a < 0.0)
        throw DomainError("'" + f.label() + "' is only defined for x > 0 but the support of " + m.describe() +
                          " is not");
    return f;
}

InequalityCertificate value_row(const std::string& name, const std::string& family, double value)
{
    InequalityCertificate c;
    c.name = name;
    c.family = family;
    c.lhs = value;
    c.rhs = c.ratio = c.slack = nan;
    c.pass = true;
    c.status = "value";
    return c;
}

// |a - b| <= tol_scale * scale as a certificate.
InequalityCertificate agreement_row(InequalityCertificate c, double a, double b, double scale, double tol)
{
    c.lhs = std::abs(a - b);
    c.rhs = 1e-6 * scale;
    finalize(c, tol);
    return c;
}

class Planner {
public:
    Planner(const RunConfig& cfg) : cfg_(cfg)
    {
        for (const auto& text : cfg.functions) {
            const auto expr = Expression::parse(text);
            battery_.push_back({expr.text(), [expr](const Measure& m) { return expr.instantiate(m); }});
        }
        for (int i = 0; i < cfg.random_functions; ++i) {
            const std::string label = "pl" + std::to_string(cfg.seed) + "_" + std::to_string(i);
            battery_.push_back({label, [seed = cfg.seed, count = cfg.random_functions, i](const Measure& m) {
                                    return random_battery(m, seed, count)[static_cast<std::size_t>(i)];
                                }});
        }
    }

    std::vector<Task> plan()
    {
        const bool iso_requested = std::any_of(cfg_.checks.begin(), cfg_.checks.end(),
                                               [](const CheckSpec& s) { return s.name == "isoperimetric"; });
        if (cfg_.isoperimetric_rows || iso_requested)
            for (const auto& me : cfg_.measures) add_isoperimetric(me);
        for (const auto& spec : cfg_.checks) {
            if (spec.name == "isoperimetric") continue; // once per measure, added above
            if (spec.name == "cp_sequence") {
                add_cp(spec);
                continue;
            }
            for (const auto& me : cfg_.measures) add(spec, me);
        }
        return std::move(tasks_);
    }

private:
    std::vector<NamedFunction> functions(const std::vector<std::string>& exprs) const
    {
        if (exprs.empty()) return battery_;
        std::vector<NamedFunction> out;
        for (const auto& text : exprs) {
            const auto expr = Expression::parse(text);
            out.push_back({expr.text(), [expr](const Measure& m) { return expr.instantiate(m); }});
        }
        return out;
    }

    std::vector<std::pair<NamedFunction, NamedFunction>> pairs(const CheckSpec& spec) const
    {
        std::vector<std::pair<NamedFunction, NamedFunction>> out;
        if (spec.g.empty() && spec.h.empty()) {
            for (const auto& f : battery_) out.emplace_back(f, f);
            return out;
        }
        for (const auto& g : functions(spec.g))
            for (const auto& h : functions(spec.h)) out.emplace_back(g, h);
        return out;
    }

    void push(InequalityCertificate proto_cert, std::function<std::vector<InequalityCertificate>()> fn)
    {
        tasks_.push_back({std::move(proto_cert), std::move(fn)});
    }

    void push1(InequalityCertificate proto_cert, std::function<InequalityCertificate()> fn)
    {
        push(std::move(proto_cert), [fn = std::move(fn)] { return std::vector<InequalityCertificate>{fn()}; });
    }

    void add_isoperimetric(const MeasureEntry& me)
    {
        auto c = proto("isoperimetric_constant", &me);
        const Measure m = me.measure;
        push1(c, [m, c] {
            const auto profile = isoperimetric_constant(m);
            auto row = value_row(c.name, c.family, profile.is_value);
            row.side_conditions = {{"argmin_x", profile.argmin_x},
                                   {"argmin_t", profile.argmin_t},
                                   {"diverging_tail", profile.diverging_tail ? 1.0 : 0.0},
                                   {"clamped", profile.clamped ? 1.0 : 0.0}};
            return row;
        });
    }

    void add_cp(const CheckSpec& spec)
    {
        const auto ps = or_default(spec.p, {2.0, 3.0, 5.0, 10.0, 100.0, 1000.0});
        auto c = proto("cp_constant", nullptr);
        push(c, [ps, c] {
            const auto values = cp_sequence(ps);
            std::vector<InequalityCertificate> rows;
            for (std::size_t i = 0; i < ps.size(); ++i) {
                auto row = value_row(c.name, c.family, values[i]);
                row.p = ps[i];
                row.params = {{"p", ps[i]}};
                rows.push_back(std::move(row));
            }
            return rows;
        });
    }

    void add(const CheckSpec& spec, const MeasureEntry& me)
    {
        const Measure m = me.measure;
        const double tol = cfg_.pass_tolerance;
        const std::string& name = spec.name;

        auto labelled = [&](std::initializer_list<std::pair<const std::string, std::string>> labels,
                            std::map<std::string, double> params = {}) {
            auto c = proto(name, &me);
            c.labels = labels;
            c.params = std::move(params);
            if (c.params.count("p")) c.p = c.params["p"];
            return c;
        };

        if (name == "cheeger" || name == "mean_median_sandwich") {
            for (const auto& g : functions(spec.g)) {
                push1(labelled({{"g", g.label}}), [=] {
                    const auto gf = checked(g.make(m), m);
                    return name == "cheeger" ? check_cheeger(m, gf, tol) : check_mean_median_sandwich(m, gf, tol);
                });
            }
            return;
        }
        if (name == "cov_l1_linf" || name == "brascamp_lieb" || name == "cov_variant" || name == "kernel_identity") {
            const auto sides = or_default(spec.side, {"left", "right"});
            for (const auto& [g, h] : pairs(spec)) {
                if (name == "cov_variant") {
                    for (const auto& side : sides)
                        push1(labelled({{"g", g.label}, {"h", h.label}, {"side", side}}), [=] {
                            return check_cov_variant(m, checked(g.make(m), m), checked(h.make(m), m),
                                                     side == "left" ? Side::left : Side::right, tol);
                        });
                    continue;
                }
                push1(labelled({{"g", g.label}, {"h", h.label}}), [=, c = labelled({{"g", g.label}, {"h", h.label}})] {
                    const auto gf = checked(g.make(m), m);
                    const auto hf = checked(h.make(m), m);
                    if (name == "cov_l1_linf") return check_cov_l1_linf(m, gf, hf, tol);
                    if (name == "brascamp_lieb") return check_brascamp_lieb(m, gf, hf, tol);
                    const double direct = covariance_direct(m, gf, hf);
                    const double kernel = covariance_kernel(m, gf, hf);
                    auto row = agreement_row(c, direct, kernel, 1.0 + std::abs(direct), tol);
                    row.side_conditions = {{"cov_direct", direct}, {"cov_kernel", kernel}};
                    return row;
                });
            }
            return;
        }
        if (name == "cov_lp_lq" || name == "cov_lp_lq_T" || name == "cov_final") {
            for (double p : or_default(spec.p, {2.0}))
                for (const auto& [g, h] : pairs(spec))
                    push1(labelled({{"g", g.label}, {"h", h.label}}, {{"p", p}}), [=] {
                        const auto gf = checked(g.make(m), m);
                        const auto hf = checked(h.make(m), m);
                        if (name == "cov_lp_lq") return check_cov_lp_lq(m, gf, hf, p, tol);
                        if (name == "cov_lp_lq_T") return check_cov_lp_lq_T(m, gf, hf, p, tol);
                        return check_cov_final(m, gf, hf, p, tol);
                    });
            return;
        }
        if (name == "tail_identity") {
            const auto sides = or_default(spec.side, {"left", "right"});
            std::vector<double> zs = spec.k;
            if (zs.empty())
                for (double t : {0.1, 0.25, 0.5, 0.75, 0.9}) zs.push_back(m.quantile(t));
            for (const auto& h : functions(spec.h.empty() ? spec.g : spec.h))
                for (const auto& side : sides)
                    for (double z : zs) {
                        auto c = labelled({{"h", h.label}, {"side", side}}, {{"z", z}});
                        push1(c, [=] {
                            const auto hf = checked(h.make(m), m);
                            const auto id = side == "left" ? tail_identity_left(m, hf, z) : tail_identity_right(m, hf, z);
                            auto row = agreement_row(c, id.direct, id.kernel,
                                                     std::max({std::abs(id.direct), std::abs(id.kernel), 1e-6}), tol);
                            row.side_conditions = {{"direct", id.direct}, {"kernel", id.kernel}};
                            return row;
                        });
                    }
            return;
        }
        if (name == "hardy") {
            const auto ks = or_default(spec.k, {m.median()});
            for (double p : or_default(spec.p, {1.5, 2.0, 3.0, 5.0}))
                for (double k : ks)
                    for (const auto& h : functions(spec.h.empty() ? spec.g : spec.h))
                        push1(labelled({{"h", h.label}}, {{"p", p}, {"k", k}}),
                              [=] { return hardy_certificate(m, checked(h.make(m), m), k, p, tol); });
            return;
        }
        if (name == "lp_poincare") {
            for (const auto& variant : or_default(spec.variant, {"centered_2p"}))
                for (double p : or_default(spec.p, {1.0, 2.0}))
                    for (const auto& u : functions(spec.g))
                        push1(labelled({{"u", u.label}, {"variant", variant}}, {{"p", p}}), [=] {
                            return check_lp_poincare(m, checked(u.make(m), m), p, *parse_poincare_variant(variant),
                                                     tol);
                        });
            return;
        }
        if (name == "sharpness") {
            std::vector<int> ks;
            for (double k : or_default(spec.k, {1.0, 3.0, 5.0})) ks.push_back(static_cast<int>(k));
            for (const auto& variant : or_default(spec.variant, {"centered_p"}))
                for (double p : or_default(spec.p, {1.0, 2.0})) {
                    auto c = labelled({{"variant", variant}}, {{"p", p}});
                    c.name = "lp_poincare_sharpness";
                    push(c, [=] {
                        auto rows = sharpness_sweep(m, p, ks, *parse_poincare_variant(variant), tol);
                        for (auto& r : rows) r.name = "lp_poincare_sharpness";
                        return rows;
                    });
                }
            return;
        }
        if (name == "orlicz") {
            for (const auto& young : or_default(spec.young, {"x^2"}))
                for (const auto& centering : or_default(spec.centering, {"median_centered", "mean_centered"}))
                    for (const auto& f : functions(spec.g))
                        push1(labelled({{"f", f.label}, {"N", young}, {"centering", centering}}), [=] {
                            const auto n = young == "psi1" ? YoungFunction::psi1()
                                                           : YoungFunction::power(std::stod(young.substr(
                                                                 young.find('^') + 1)));
                            return check_orlicz(m, checked(f.make(m), m), n, *parse_centering(centering), tol);
                        });
            return;
        }
        if (name == "moment_growth" || name == "moment_comparison" || name == "logconcave_moments") {
            const std::vector<double> dflt = name == "moment_growth" ? std::vector<double>{1.0, 2.0, 3.0}
                                                                     : std::vector<double>{2.0};
            for (double p : or_default(spec.p, dflt))
                push1(labelled({}, {{"p", p}}), [=] {
                    if (name == "moment_growth") return check_moment_growth(m, p, tol);
                    if (name == "moment_comparison") return check_moment_comparison(m, p, tol);
                    return check_logconcave_moments(m, p, tol);
                });
            return;
        }
        if (name == "psi1_bound") {
            push1(labelled({}), [=] { return check_psi1_bound(m, tol); });
            return;
        }
        if (name == "best_constant") {
            const auto deltas = or_default(spec.delta, {1e-1, 1e-2, 1e-3});
            std::vector<std::optional<NamedFunction>> gs;
            if (spec.g.empty()) gs.emplace_back(std::nullopt);
            for (const auto& g : functions(spec.g))
                if (!spec.g.empty()) gs.emplace_back(g);
            for (const auto& g : gs) {
                auto c = labelled({{"g", g ? g->label : std::string("extremal")}});
                push1(c, [=] {
                    std::optional<DifferentiableFunction> gf;
                    if (g) gf = checked(g->make(m), m);
                    const auto est = estimate_best_constant(m, gf, deltas);
                    auto row = c;
                    row.lhs = est.ratios.back();
                    row.rhs = est.target;
                    finalize(row, tol);
                    for (std::size_t i = 0; i < est.ratios.size(); ++i) {
                        row.side_conditions["delta_" + std::to_string(i)] = est.deltas[i];
                        row.side_conditions["ratio_" + std::to_string(i)] = est.ratios[i];
                    }
                    row.side_conditions["limit_estimate"] = est.limit_estimate;
                    row.side_conditions["monotone"] = est.monotone ? 1.0 : 0.0;
                    row.side_conditions["center"] = est.center;
                    if (!est.monotone) {
                        row.pass = false;
                        row.status = "fail";
                        row.message = "ratio sequence is not monotone in delta";
                    }
                    return row;
                });
            }
            return;
        }
        throw DomainError("check '" + name + "' is not runnable");
    }

    const RunConfig& cfg_;
    std::vector<NamedFunction> battery_;
    std::vector<Task> tasks_;
};

std::vector<InequalityCertificate> execute(const Task& task)
{
    auto failed = [&](const char* status, const std::string& message) {
        auto c = task.proto;
        c.lhs = c.rhs = c.ratio = c.slack = nan;
        c.pass = false;
        c.status = status;
        c.message = message;
        return std::vector<InequalityCertificate>{c};
    };
    try {
        return task.fn();
    } catch (const HypothesisViolated& e) {
        return failed("inapplicable", e.what());
    } catch (const UnsupportedMeasure& e) {
        return failed("inapplicable", e.what());
    } catch (const DomainError& e) {
        return failed("inapplicable", e.what());
    } catch (const std::exception& e) {
        // IntegrationError, DivergentNorm, ComputationError
        return failed("numerical_failure", e.what());
    }
}

// Restores the process-wide quadrature tolerance on scope exit.
class QuadratureToleranceScope {
public:
    explicit QuadratureToleranceScope(double tol) : saved_(quadrature_rel_tol_setting().exchange(tol)) {}
    ~QuadratureToleranceScope() { quadrature_rel_tol_setting().store(saved_); }

private:
    double saved_;
};

} // namespace

std::vector<DifferentiableFunction> random_battery(const Measure& m, std::uint64_t seed, int count)
{
    std::mt19937_64 rng(seed);
    // 53-bit uniform in [0, 1), independent of the standard library's distribution code
    auto uniform = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
    std::vector<DifferentiableFunction> out;
    for (int i = 0; i < count; ++i) {
        const int knots = 3 + static_cast<int>(rng() % 4);
        std::vector<double> levels, values;
        for (int j = 0; j < knots; ++j) {
            levels.push_back(0.02 + 0.96 * uniform());
            values.push_back(2.0 * uniform() - 1.0);
        }
        std::sort(levels.begin(), levels.end());
        std::vector<double> nodes, vals;
        for (int j = 0; j < knots; ++j) {
            const double x = m.quantile(levels[j]);
            if (!nodes.empty() && !(x > nodes.back())) continue;
            nodes.push_back(x);
            vals.push_back(values[j]);
        }
        if (nodes.size() < 2) {
            nodes = {m.quantile(0.25), m.quantile(0.75)};
            vals = {-1.0, 1.0};
        }
        out.push_back(piecewise_linear(nodes, vals).relabeled("pl" + std::to_string(seed) + "_" + std::to_string(i)));
    }
    return out;
}

RunResult run(const RunConfig& config, unsigned threads)
{
    QuadratureToleranceScope scope(config.quadrature_tolerance);
    const auto tasks = Planner(config).plan();
    std::vector<std::vector<InequalityCertificate>> results(tasks.size());

    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(tasks.size(), 1)));
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < tasks.size();) results[i] = execute(tasks[i]);
    };
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    RunResult out;
    for (auto& batch : results)
        for (auto& c : batch) {
            c.params["tol"] = config.pass_tolerance;
            c.params["qtol"] = config.quadrature_tolerance;
            if (config.rhs_scale != 1.0 && (c.status == "pass" || c.status == "fail")) {
                c.rhs *= config.rhs_scale;
                finalize(c, config.pass_tolerance);
                c.params["debug_rhs_scale"] = config.rhs_scale;
            }
            out.rows.push_back(std::move(c));
        }
    sort_certificates(out.rows);

    bool any_fail = false, any_numerical = false;
    for (const auto& c : out.rows) {
        any_fail = any_fail || c.status == "fail";
        any_numerical = any_numerical || c.status == "numerical_failure";
    }
    out.exit_code = any_fail ? exit_certificate_failure : any_numerical ? exit_numerical_failure : exit_ok;
    return out;
}

bool write_report(const RunConfig& config, const RunResult& result, std::ostream& fallback)
{
    auto emit = [&](std::ostream& os) {
        if (config.format == "json") write_json(os, result.rows);
        else write_csv(os, result.rows);
    };
    if (config.output_path.empty() || config.output_path == "-") {
        emit(fallback);
        return true;
    }
    std::ofstream out(config.output_path, std::ios::binary);
    if (!out) return false;
    emit(out);
    return static_cast<bool>(out);
}

} // namespace cheeger
