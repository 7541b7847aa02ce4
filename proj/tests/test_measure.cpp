#include <cmath>
#include <vector>

#include <doctest.h>

#include "cheeger/errors.hpp"
#include "cheeger/integrate.hpp"
#include "cheeger/measure.hpp"
#include "oracles.hpp"

using namespace cheeger;

namespace {

std::vector<Measure> families()
{
    return {Measure::gaussian(0.3, 1.7), Measure::laplace(-1, 0.5), Measure::exponential(2.0),
            Measure::uniform(-1, 3), Measure::logistic(0.5, 2.0), Measure::beta(2, 5, 3.0)};
}

} // namespace

TEST_CASE("pdf integrates to the cdf")
{
    for (const auto& m : families()) {
        CAPTURE(m.describe());
        const double a = m.quantile(0.2), b = m.quantile(0.7);
        // split at the median, where the Laplace density has its kink
        auto f = [&](double x) { return m.pdf(x); };
        const double mass = oracle::simpson(f, a, m.median(), 4000) + oracle::simpson(f, m.median(), b, 4000);
        CHECK(mass == doctest::Approx(0.5).epsilon(1e-9));
        CHECK(m.cdf(a) + m.sf(a) == doctest::Approx(1.0).epsilon(1e-14));
    }
}

TEST_CASE("cdf derivative is the pdf")
{
    for (const auto& m : families()) {
        CAPTURE(m.describe());
        for (double t : {0.1, 0.35, 0.6, 0.9}) {
            const double x = m.quantile(t);
            const double d = oracle::central_difference([&](double y) { return m.cdf(y); }, x, 1e-5);
            CHECK(d == doctest::Approx(m.pdf(x)).epsilon(1e-6));
        }
    }
}

TEST_CASE("quantile inverts the cdf on both tails")
{
    for (const auto& m : families()) {
        CAPTURE(m.describe());
        for (double t : {1e-12, 1e-6, 0.01, 0.3, 0.5}) {
            CHECK(m.cdf(m.lower_quantile(t)) == doctest::Approx(t).epsilon(1e-8));
            CHECK(m.sf(m.upper_quantile(t)) == doctest::Approx(t).epsilon(1e-8));
        }
    }
}

TEST_CASE("beta quantile against bisection")
{
    const auto m = Measure::beta(2.5, 0.7);
    for (double t : {1e-4, 0.2, 0.5, 0.97}) {
        const double ref = oracle::bisect([&](double x) { return m.cdf(x) - t; }, 0.0, 1.0);
        CHECK(m.quantile(t) == doctest::Approx(ref).epsilon(1e-10));
    }
}

TEST_CASE("medians")
{
    CHECK(Measure::laplace(2, 1).median() == doctest::Approx(2.0));
    CHECK(Measure::exponential(1).median() == doctest::Approx(std::log(2.0)));
    CHECK(Measure::uniform(0, 4).median() == doctest::Approx(2.0));
}

TEST_CASE("rescale gives the law of X/c")
{
    const auto m = Measure::gaussian(1.0, 2.0);
    const auto r = m.rescale(4.0);
    for (double x : {-1.0, 0.1, 0.7})
        CHECK(r.cdf(x) == doctest::Approx(m.cdf(4.0 * x)).epsilon(1e-13));
}

TEST_CASE("moments match Gamma-function oracles")
{
    const auto L = Measure::laplace(0, 1);
    const auto G = Measure::gaussian(0, 1);
    const auto E = Measure::exponential(1);
    for (double p : {1.0, 2.0, 3.0, 4.5}) {
        CAPTURE(p);
        CHECK(std::pow(lp_norm(L, identity(), p), p) == doctest::Approx(oracle::laplace_abs_moment(p)).epsilon(1e-9));
        CHECK(std::pow(lp_norm(G, identity(), p), p) == doctest::Approx(oracle::gaussian_abs_moment(p)).epsilon(1e-9));
        CHECK(std::pow(lp_norm(E, identity(), p), p) == doctest::Approx(oracle::exponential_moment(p)).epsilon(1e-9));
    }
    CHECK(expectation(E, identity()) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(expectation(L, identity())) < 1e-12);
}

TEST_CASE("tabulated density ingestion")
{
    std::vector<double> x, f;
    for (int i = 0; i <= 40; ++i) {
        x.push_back(-4.0 + 0.2 * i);
        f.push_back(std::exp(-0.5 * x.back() * x.back()));
    }
    const auto m = ingest_tabulated(x, f);
    CHECK(m.cdf(0.0) == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(m.quantile(0.5) == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(m.cdf(m.quantile(0.23)) == doctest::Approx(0.23).epsilon(1e-10));

    CHECK_THROWS_AS(ingest_tabulated({0, 1, 2}, {1, 1, 1}), IngestionError);
    std::vector<double> neg = f;
    neg[3] = -1.0;
    CHECK_THROWS_AS(ingest_tabulated(x, neg), IngestionError);
    std::vector<double> hole = f;
    hole[10] = 0.0;
    CHECK_THROWS_AS(ingest_tabulated(x, hole), IngestionError);
    std::vector<double> edge = f;
    edge.front() = 0.0;
    CHECK_NOTHROW(ingest_tabulated(x, edge));
    std::vector<double> unsorted = x;
    std::swap(unsorted[2], unsorted[3]);
    CHECK_THROWS_AS(ingest_tabulated(unsorted, f), IngestionError);
}

TEST_CASE("invalid parameters are rejected")
{
    CHECK_THROWS(Measure::gaussian(0, -1));
    CHECK_THROWS(Measure::uniform(1, 1));
    CHECK_THROWS(Measure::beta(0, 1));
    CHECK_THROWS(Measure::exponential(0));
}
