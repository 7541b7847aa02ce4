#include <filesystem>
#include <fstream>
#include <sstream>

#include <doctest.h>
#include <json.hpp>

#include "cheeger/config.hpp"
#include "cheeger/errors.hpp"
#include "cheeger/report.hpp"
#include "cheeger/runner.hpp"

using namespace cheeger;

namespace {

std::string report(const RunConfig& cfg, const RunResult& r)
{
    std::ostringstream os;
    write_report(cfg, r, os);
    return os.str();
}

} // namespace

TEST_CASE("measure specs")
{
    CHECK(parse_measure_spec("laplace:0,1").family() == Family::laplace);
    CHECK(parse_measure_spec("normal").family() == Family::gaussian);
    CHECK(parse_measure_spec("beta:2,5").family() == Family::beta);
    CHECK_THROWS(parse_measure_spec("cauchy:0,1"));
    CHECK_THROWS(parse_measure_spec("gaussian:0,-1"));
    CHECK_THROWS_AS(parse_measure_spec("tabulated:/no/such/file.txt"), IngestionError);
}

TEST_CASE("config validation collects every issue with a location")
{
    const std::string bad = R"({
      "measures": ["laplace:0,1"],
      "functions": ["x", "x^^2"],
      "checks": [{"name": "cheegr"}, {"name": "lp_poincare", "p": [0.5]}],
      "bogus": 1
    })";
    try {
        (void)parse_config(bad);
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        const std::string msg = e.what();
        CHECK(msg.find("functions[1]") != std::string::npos);
        CHECK(msg.find("cheeger") != std::string::npos); // suggestion
        CHECK(msg.find("checks[1].p") != std::string::npos);
        CHECK(msg.find("bogus") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_config("{ not json"), ConfigError);
}

TEST_CASE("nearest check suggestion")
{
    CHECK(nearest_check("hardi") == "hardy");
    CHECK(nearest_check("cov_l1linf") == "cov_l1_linf");
}

TEST_CASE("number formatting and csv layout")
{
    CHECK(format_number(INFINITY) == "inf");
    CHECK(format_number(NAN) == "nan");
    CHECK(format_number(0.5) == "0.5");
    InequalityCertificate c;
    c.name = "cheeger";
    c.family = "laplace(0,1)";
    c.labels["g"] = "x";
    c.lhs = 2;
    c.rhs = 4;
    finalize(c, 1e-6);
    const auto row = csv_row(c);
    CHECK(row.find("\"laplace(0,1)\"") != std::string::npos);
    CHECK(row.substr(row.size() - 9) == "true,pass");
    const auto j = to_json(c);
    CHECK(j["ratio"].get<double>() == doctest::Approx(0.5));
}

TEST_CASE("runner: default suite on Laplace passes and is deterministic")
{
    auto cfg = default_config({{"laplace:0,1", Measure::laplace(0, 1)}});
    cfg.seed = 17;
    cfg.random_functions = 3;
    const auto a = run(cfg, 1);
    const auto b = run(cfg, 4);
    CHECK(a.exit_code == exit_ok);
    CHECK(report(cfg, a) == report(cfg, b));
    bool any_fail = false;
    for (const auto& r : a.rows) any_fail = any_fail || r.status == "fail";
    CHECK_FALSE(any_fail);
}

TEST_CASE("runner: scaled bounds fail, numerical failures are reported")
{
    auto cfg = default_config({{"laplace:0,1", Measure::laplace(0, 1)}});
    cfg.rhs_scale = 0.1;
    CHECK(run(cfg).exit_code == exit_certificate_failure);

    RunConfig bad = parse_config(R"({"measures":["uniform:0,1"],"functions":["x^-1"],"checks":[{"name":"cheeger"}]})");
    const auto r = run(bad);
    CHECK(r.exit_code == exit_numerical_failure);
}

TEST_CASE("json report round trip")
{
    auto cfg = parse_config(R"({"measures":["gaussian"],"functions":["x"],"checks":[{"name":"cheeger"}],"output":{"format":"json"}})");
    const auto r = run(cfg);
    const auto j = nlohmann::json::parse(report(cfg, r));
    REQUIRE(j.is_array());
    bool found = false;
    for (const auto& row : j)
        if (row["name"] == "cheeger") {
            found = true;
            CHECK(row["pass"] == true);
        }
    CHECK(found);
}

TEST_CASE("random battery is reproducible")
{
    const auto m = Measure::gaussian(0, 1);
    const auto a = random_battery(m, 5, 4);
    const auto b = random_battery(m, 5, 4);
    const auto c = random_battery(m, 6, 4);
    REQUIRE(a.size() == 4);
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i](0.3) == b[i](0.3));
        CHECK(a[i].label() == b[i].label());
    }
    CHECK(a[0](0.3) != c[0](0.3));
}
