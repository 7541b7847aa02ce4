#include <cmath>

#include <doctest.h>

#include "cheeger/errors.hpp"
#include "cheeger/young.hpp"
#include "oracles.hpp"

using namespace cheeger;

TEST_CASE("C_N for powers and psi1")
{
    for (double p : {1.0, 2.0, 3.0, 7.5}) CHECK(young_cn(YoungFunction::power(p)).value == doctest::Approx(p));
    const auto c = young_cn(YoungFunction::psi1());
    CHECK(c.infinite);
    CHECK(std::isinf(c.value));
}

TEST_CASE("Orlicz norms against closed forms")
{
    CHECK(orlicz_norm(Measure::laplace(0, 1), identity(), YoungFunction::power(2)) ==
          doctest::Approx(std::sqrt(2.0)).epsilon(1e-8));
    CHECK(orlicz_norm(Measure::exponential(1), identity(), YoungFunction::psi1()) == doctest::Approx(2.0).epsilon(1e-8));
    CHECK(orlicz_norm(Measure::gaussian(0, 1), constant(0), YoungFunction::psi1()) == 0.0);
}

TEST_CASE("psi1 norm of a Gaussian against bisection")
{
    const auto m = Measure::gaussian(0, 1);
    auto modular = [&](double lam) {
        return oracle::simpson([&](double x) { return std::expm1(std::abs(x) / lam) * m.pdf(x); }, -40, 40, 40000) - 1.0;
    };
    const double ref = oracle::bisect([&](double lam) { return -modular(lam); }, 0.5, 5.0, 80);
    CHECK(orlicz_norm(m, identity(), YoungFunction::psi1()) == doctest::Approx(ref).epsilon(1e-7));
}

TEST_CASE("Orlicz norm is homogeneous")
{
    const auto m = Measure::logistic(0, 1);
    const double a = orlicz_norm(m, identity(), YoungFunction::power(3));
    CHECK(orlicz_norm(m, affine(4, 0), YoungFunction::power(3)) == doctest::Approx(4 * a));
}

TEST_CASE("wide tabulated support gives a large psi1 norm")
{
    std::vector<double> x, f;
    for (int i = 0; i <= 400; ++i) {
        x.push_back(-2000.0 + 10.0 * i);
        f.push_back(std::pow(1 + x.back() * x.back(), -0.6));
    }
    const auto m = ingest_tabulated(x, f);
    // the truncated table is bounded, so the norm is finite but large
    CHECK(orlicz_norm(m, identity(), YoungFunction::psi1()) > 10.0);
}
