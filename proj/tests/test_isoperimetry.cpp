#include <algorithm>
#include <cmath>

#include <doctest.h>

#include "cheeger/isoperimetry.hpp"
#include "cheeger/measure.hpp"
#include "oracles.hpp"

using namespace cheeger;

namespace {

// brute force: minimum of f / min(F, 1 - F) over a dense quantile grid
double brute_force_is(const Measure& m, int n = 200000)
{
    double best = INFINITY;
    for (int i = 1; i < n; ++i) {
        const double t = double(i) / n;
        const double x = m.quantile(t);
        best = std::min(best, m.pdf(x) / std::min(t, 1.0 - t));
    }
    return best;
}

} // namespace

TEST_CASE("closed-form isoperimetric constants")
{
    CHECK(isoperimetric_constant(Measure::laplace(0, 1)).is_value == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(isoperimetric_constant(Measure::uniform(0, 1)).is_value == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(isoperimetric_constant(Measure::gaussian(0, 1)).is_value ==
          doctest::Approx(std::sqrt(2.0 / M_PI)).epsilon(1e-9));
    CHECK(isoperimetric_constant(Measure::exponential(1)).is_value == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(isoperimetric_constant(Measure::logistic(0, 1)).is_value == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("constant agrees with a brute-force grid")
{
    for (const auto& m : {Measure::beta(2, 5), Measure::beta(3, 3), Measure::logistic(1, 0.3),
                          Measure::gaussian(2, 0.5)}) {
        CAPTURE(m.describe());
        const double is = isoperimetric_constant(m).is_value;
        const double bf = brute_force_is(m);
        CHECK(is <= bf * (1 + 1e-9));
        CHECK(is == doctest::Approx(bf).epsilon(1e-6));
    }
}

TEST_CASE("scaling law Is(X/c) = c Is(X)")
{
    for (const auto& m : {Measure::gaussian(0, 1), Measure::beta(2, 5), Measure::laplace(0, 1)}) {
        const double base = isoperimetric_constant(m).is_value;
        for (double c : {0.25, 3.0}) CHECK(isoperimetric_constant(m.rescale(c)).is_value == doctest::Approx(c * base));
    }
}

TEST_CASE("profile ratios bound the constant from above")
{
    const auto p = isoperimetric_constant(Measure::gaussian(0, 1), 1024);
    REQUIRE(p.ratios.size() == p.grid.size());
    for (double r : p.ratios) CHECK(r >= p.is_value * (1 - 1e-12));
    CHECK(std::abs(p.argmin_x) < 1e-6);
    CHECK_FALSE(p.diverging_tail);
}

TEST_CASE("heavy tails drive the constant to zero")
{
    std::vector<double> x, f;
    // density ~ 1/(1+x^2)^(1.2), polynomial tail truncated far out
    for (int i = 0; i <= 400; ++i) {
        x.push_back(-2000.0 + 10.0 * i);
        f.push_back(std::pow(1 + x.back() * x.back(), -0.3));
    }
    const auto m = ingest_tabulated(x, f);
    const double is = isoperimetric_constant(m).is_value;
    CHECK(is >= 0.0);
    CHECK(is < 0.01);
}
