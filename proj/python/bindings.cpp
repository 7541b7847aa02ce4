#include <sstream>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cheeger/config.hpp"
#include "cheeger/errors.hpp"
#include "cheeger/expr.hpp"
#include "cheeger/inequalities.hpp"
#include "cheeger/isoperimetry.hpp"
#include "cheeger/kernel.hpp"
#include "cheeger/report.hpp"
#include "cheeger/runner.hpp"

namespace py = pybind11;
using namespace cheeger;

namespace {

py::dict certificate_dict(const InequalityCertificate& c)
{
    py::dict d;
    d["name"] = c.name;
    d["family"] = c.family;
    d["params"] = c.params;
    d["labels"] = c.labels;
    d["p"] = c.p;
    d["lhs"] = c.lhs;
    d["rhs"] = c.rhs;
    d["ratio"] = c.ratio;
    d["slack"] = c.slack;
    d["side_conditions"] = c.side_conditions;
    d["tolerance"] = c.tolerance;
    d["pass"] = c.pass;
    d["status"] = c.status;
    return d;
}

DifferentiableFunction fn(const std::string& expr, const Measure& m) { return parse_function(expr, m); }

} // namespace

PYBIND11_MODULE(_cheeger, mod)
{
    mod.doc() = "Isoperimetric constants and functional inequality certificates on the real line";

    py::register_exception<DomainError>(mod, "DomainError", PyExc_ValueError);
    py::register_exception<IntegrationError>(mod, "IntegrationError", PyExc_ArithmeticError);
    py::register_exception<HypothesisViolated>(mod, "HypothesisViolated", PyExc_ValueError);
    py::register_exception<UnsupportedMeasure>(mod, "UnsupportedMeasure", PyExc_ValueError);
    py::register_exception<ExpressionError>(mod, "ExpressionError", PyExc_ValueError);
    py::register_exception<ConfigError>(mod, "ConfigError", PyExc_ValueError);

    py::class_<Measure>(mod, "Measure")
        .def_static("gaussian", &Measure::gaussian, py::arg("mean") = 0.0, py::arg("sd") = 1.0)
        .def_static("laplace", &Measure::laplace, py::arg("loc") = 0.0, py::arg("scale") = 1.0)
        .def_static("exponential", &Measure::exponential, py::arg("rate") = 1.0)
        .def_static("uniform", &Measure::uniform, py::arg("lo") = 0.0, py::arg("hi") = 1.0)
        .def_static("logistic", &Measure::logistic, py::arg("loc") = 0.0, py::arg("scale") = 1.0)
        .def_static("beta", &Measure::beta, py::arg("alpha"), py::arg("beta"), py::arg("scale") = 1.0)
        .def_static("tabulated", &ingest_tabulated, py::arg("nodes"), py::arg("values"))
        .def_static("parse", [](const std::string& s) { return parse_measure_spec(s); }, py::arg("spec"))
        .def("pdf", &Measure::pdf)
        .def("cdf", &Measure::cdf)
        .def("sf", &Measure::sf)
        .def("quantile", &Measure::quantile)
        .def("median", &Measure::median)
        .def("rescale", &Measure::rescale)
        .def("describe", &Measure::describe)
        .def("__repr__", [](const Measure& m) { return "<Measure " + m.describe() + ">"; });

    mod.def(
        "isoperimetric_constant",
        [](const Measure& m, int grid) {
            const auto p = isoperimetric_constant(m, grid);
            py::dict d;
            d["value"] = p.is_value;
            d["argmin_x"] = p.argmin_x;
            d["argmin_t"] = p.argmin_t;
            d["diverging_tail"] = p.diverging_tail;
            d["grid"] = p.grid;
            d["ratios"] = p.ratios;
            return d;
        },
        py::arg("measure"), py::arg("grid_size") = default_iso_grid_size);

    mod.def(
        "covariance",
        [](const Measure& m, const std::string& g, const std::string& h, const std::string& method) {
            if (method == "direct") return covariance_direct(m, fn(g, m), fn(h, m));
            if (method == "kernel") return covariance_kernel(m, fn(g, m), fn(h, m));
            throw DomainError("method must be 'direct' or 'kernel'");
        },
        py::arg("measure"), py::arg("g"), py::arg("h"), py::arg("method") = "direct");

    mod.def("kernel", &kernel_eval, py::arg("measure"), py::arg("x"), py::arg("y"));

    mod.def(
        "t_norm", [](const Measure& m, const std::string& h, double k, double p) { return t_norm(m, fn(h, m), k, p); },
        py::arg("measure"), py::arg("h"), py::arg("k"), py::arg("p"));

    mod.def(
        "hardy",
        [](const Measure& m, const std::string& h, double k, double p) {
            return certificate_dict(hardy_certificate(m, fn(h, m), k, p));
        },
        py::arg("measure"), py::arg("h"), py::arg("k"), py::arg("p"));

    mod.def(
        "lp_poincare",
        [](const Measure& m, const std::string& u, double p, const std::string& variant) {
            const auto v = parse_poincare_variant(variant);
            if (!v) throw DomainError("unknown variant " + variant);
            return certificate_dict(check_lp_poincare(m, fn(u, m), p, *v));
        },
        py::arg("measure"), py::arg("u"), py::arg("p"), py::arg("variant") = "centered_2p");

    mod.def(
        "cheeger", [](const Measure& m, const std::string& g) { return certificate_dict(check_cheeger(m, fn(g, m))); },
        py::arg("measure"), py::arg("g"));

    mod.def(
        "moment_comparison", [](const Measure& m, double p) { return certificate_dict(check_moment_comparison(m, p)); },
        py::arg("measure"), py::arg("p"));

    mod.def("cp_sequence", &cp_sequence, py::arg("p_values"));

    mod.def(
        "best_constant",
        [](const Measure& m, std::optional<std::string> g, std::vector<double> deltas) {
            std::optional<DifferentiableFunction> gf;
            if (g) gf = fn(*g, m);
            const auto e = estimate_best_constant(m, gf, deltas);
            py::dict d;
            d["deltas"] = e.deltas;
            d["ratios"] = e.ratios;
            d["limit_estimate"] = e.limit_estimate;
            d["target"] = e.target;
            d["monotone"] = e.monotone;
            return d;
        },
        py::arg("measure"), py::arg("g") = py::none(), py::arg("deltas") = std::vector<double>{1e-1, 1e-2, 1e-3});

    mod.def(
        "run_config",
        [](const std::string& text) {
            auto cfg = parse_config(text);
            cfg.output_path.clear();
            const auto result = [&] {
                py::gil_scoped_release release;
                return run(cfg);
            }();
            std::ostringstream os;
            write_report(cfg, result, os);
            return py::make_tuple(result.exit_code, os.str());
        },
        py::arg("config_json"), "Run a JSON configuration; returns (exit_code, report_text).");
}
