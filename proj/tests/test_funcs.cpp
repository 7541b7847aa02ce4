#include <cmath>
#include <cstdio>
#include <random>

#include <doctest.h>

#include "cheeger/errors.hpp"
#include "cheeger/expr.hpp"
#include "cheeger/funcs.hpp"
#include "cheeger/measure.hpp"
#include "oracles.hpp"

using namespace cheeger;

TEST_CASE("builder derivatives agree with finite differences")
{
    const std::vector<DifferentiableFunction> fs{identity(), monomial(3), affine(2, -1), signed_power(1.5),
                                                 abs_power(2.5), ramp({0.2, 0.7}), power(0.5)};
    for (const auto& f : fs) {
        CAPTURE(f.label());
        for (double x : {0.35, 1.3, 2.1}) {
            const double d = oracle::central_difference([&](double y) { return f(y); }, x, 1e-6);
            CHECK(f.derivative(x) == doctest::Approx(d).epsilon(1e-6));
        }
    }
}

TEST_CASE("ramp is a clamp")
{
    const auto r = ramp({1.0, 0.5});
    CHECK(r(-3.0) == -1.0);
    CHECK(r(1.25) == doctest::Approx(0.5));
    CHECK(r(9.0) == 1.0);
    CHECK(r.derivative(1.1) == doctest::Approx(2.0));
    CHECK(r.derivative(5.0) == 0.0);
}

TEST_CASE("piecewise linear interpolation")
{
    const auto f = piecewise_linear({0, 1, 3}, {0, 2, 0});
    CHECK(f(0.5) == doctest::Approx(1.0));
    CHECK(f(2.0) == doctest::Approx(1.0));
    CHECK(f.derivative(2.0) == doctest::Approx(-1.0));
    CHECK(f.knots().size() == 3);
}

TEST_CASE("p < 1 builders are domain errors")
{
    CHECK_THROWS_AS(signed_power(0.5), DomainError);
    CHECK_THROWS_AS(abs_power(0.9), DomainError);
}

TEST_CASE("expression parser")
{
    const auto m = Measure::laplace(0, 1);
    CHECK(parse_function("x^3", m)(2.0) == doctest::Approx(8.0));
    CHECK(parse_function("2*x + 1", m)(2.0) == doctest::Approx(5.0));
    CHECK(parse_function("x^(-1/4)", m)(16.0) == doctest::Approx(0.5));
    CHECK(parse_function("sgnpow(1.5)", m)(-4.0) == doctest::Approx(-8.0));
    CHECK(parse_function("ramp(0,0.5)", m)(0.25) == doctest::Approx(0.5));
    CHECK(parse_function("center(x^2)", m)(0.0) == doctest::Approx(-2.0).epsilon(1e-9));
    CHECK(parse_function("  x^3 ", m).label() == "x^3");

    try {
        (void)Expression::parse("x^^2");
        FAIL("expected a parse error");
    } catch (const ExpressionError& e) {
        CHECK(e.column() >= 2);
    }
    CHECK_THROWS_AS(Expression::parse("sin(x)"), ExpressionError);
    CHECK_THROWS_AS(Expression::parse("(x"), ExpressionError);
    CHECK_THROWS_AS(Expression::parse(""), ExpressionError);
}

TEST_CASE("random expressions round trip through the parser")
{
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> k(1, 7);
    std::uniform_real_distribution<double> c(0.1, 3.0);
    const auto m = Measure::gaussian(0, 1);
    for (int i = 0; i < 50; ++i) {
        const int deg = k(rng);
        const double a = c(rng);
        char text[64];
        std::snprintf(text, sizeof text, "%.17g*x^%d", a, deg);
        const auto f = parse_function(text, m);
        const double x = c(rng) - 1.5;
        CHECK(f(x) == doctest::Approx(a * std::pow(x, deg)).epsilon(1e-12));
    }
}
