#include <cmath>

#include <doctest.h>

#include "cheeger/errors.hpp"
#include "cheeger/inequalities.hpp"
#include "cheeger/runner.hpp"
#include "oracles.hpp"

using namespace cheeger;

namespace {

std::vector<Measure> families()
{
    return {Measure::gaussian(0, 1), Measure::laplace(0, 1), Measure::exponential(1), Measure::uniform(0, 1),
            Measure::logistic(0, 1), Measure::beta(2, 5)};
}

} // namespace

TEST_CASE("covariance inequalities hold on random batteries")
{
    for (const auto& m : families()) {
        CAPTURE(m.describe());
        const auto fs = random_battery(m, 99, 3);
        for (const auto& g : fs)
            for (const auto& h : fs) {
                CHECK(check_cov_l1_linf(m, g, h).pass);
                CHECK(check_cov_lp_lq_T(m, g, h, 2.0).pass);
                CHECK(check_cov_lp_lq(m, g, h, 3.0).pass);
                CHECK(check_cov_final(m, g, h, 1.5).pass);
            }
        for (const auto& g : fs) CHECK(check_cheeger(m, g).pass);
    }
}

TEST_CASE("known ratios")
{
    const auto L = Measure::laplace(0, 1);
    const auto U = Measure::uniform(0, 1);
    const auto G = Measure::gaussian(0, 1);
    CHECK(check_cheeger(L, identity()).ratio == doctest::Approx(0.5));
    CHECK(check_cheeger(U, identity()).ratio == doctest::Approx(1.0 / 12.0));
    CHECK(check_cov_lp_lq_T(L, identity(), identity(), 2).rhs == doctest::Approx(std::sqrt(5.0)));
    CHECK(check_cov_lp_lq(L, identity(), identity(), 2).ratio == doctest::Approx(std::sqrt(0.5)));
    CHECK(check_cov_final(L, identity(), identity(), 2).ratio == doctest::Approx(0.25));
    CHECK(check_brascamp_lieb(G, identity(), identity()).ratio == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(check_cov_variant(G, identity(), identity(), Side::left).ratio == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(check_cov_variant(G, identity(), identity(), Side::right).ratio == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("Brascamp-Lieb needs curvature")
{
    CHECK_THROWS_AS(check_brascamp_lieb(Measure::laplace(0, 1), identity(), identity()), UnsupportedMeasure);
}

TEST_CASE("Lp-Poincare sharpness on Laplace monomials")
{
    const auto L = Measure::laplace(0, 1);
    for (int k : {1, 3, 5, 7}) CHECK(check_lp_poincare(L, monomial(k), 1, PoincareVariant::raw_p).ratio == doctest::Approx(1.0).epsilon(1e-8));
    const auto s = sharpness_sweep(L, 2.0, {1, 3, 5}, PoincareVariant::centered_p);
    REQUIRE(s.size() == 3);
    CHECK(s[0].ratio == doctest::Approx(std::sqrt(0.5)).epsilon(1e-8));
    CHECK(s[1].ratio == doctest::Approx(std::sqrt(5.0 / 6.0)).epsilon(1e-8));
    CHECK(s[2].ratio == doctest::Approx(std::sqrt(0.9)).epsilon(1e-8));
}

TEST_CASE("Poincare side conditions are enforced")
{
    const auto L = Measure::laplace(0, 1);
    // x^2 is even: E[u^p] != 0 for p = 1
    CHECK_THROWS_AS(check_lp_poincare(L, monomial(2), 1, PoincareVariant::raw_2p), HypothesisViolated);
    CHECK_THROWS_AS(check_lp_poincare(L, identity(), 0.5, PoincareVariant::centered_2p), DomainError);
    for (const auto& m : families()) {
        for (const auto& u : random_battery(m, 4, 3))
            for (double p : {1.0, 2.0, 4.0}) CHECK(check_lp_poincare(m, u, p, PoincareVariant::centered_2p).pass);
    }
}

TEST_CASE("mean-median sandwich")
{
    const auto c = check_mean_median_sandwich(Measure::exponential(1), identity());
    CHECK(c.pass);
    CHECK(c.lhs == doctest::Approx(2 / std::exp(1.0)).epsilon(1e-9));
    CHECK(c.rhs == doctest::Approx(2 * std::log(2.0)).epsilon(1e-9));
}

TEST_CASE("pushforward median against bisection")
{
    const auto m = Measure::gaussian(0, 1);
    const auto g = monomial(2);
    // median of X^2 is the chi-square(1) median
    const double ref = oracle::bisect([&](double c) { return m.cdf(std::sqrt(c)) - m.cdf(-std::sqrt(c)) - 0.5; }, 0, 5);
    CHECK(pushforward_median(m, g) == doctest::Approx(ref).epsilon(1e-6));
}

TEST_CASE("Orlicz Poincare")
{
    const auto L = Measure::laplace(0, 1);
    CHECK(check_orlicz(L, identity(), YoungFunction::power(2), Centering::median_centered).pass);
    CHECK(check_orlicz(L, monomial(3), YoungFunction::power(2), Centering::mean_centered).pass);
    CHECK_THROWS_AS(check_orlicz(L, identity(), YoungFunction::psi1(), Centering::median_centered), DomainError);
}

TEST_CASE("moment suite")
{
    const auto L = Measure::laplace(0, 1);
    const auto mc = check_moment_comparison(L, 2);
    CHECK(mc.lhs == doctest::Approx(std::cbrt(6.0)).epsilon(1e-9));
    CHECK(mc.rhs == doctest::Approx(2.0).epsilon(1e-9));
    CHECK_THROWS_AS(check_moment_comparison(L, 1), DomainError);
    CHECK_THROWS_AS(check_moment_comparison(Measure::exponential(1), 2), DomainError);

    const auto lc = check_logconcave_moments(L, 2);
    CHECK(lc.side_conditions.at("E|X|^3") == doctest::Approx(oracle::laplace_abs_moment(3)));
    CHECK(lc.side_conditions.at("4sqrt3(EX^2)^(3/2)") == doctest::Approx(4 * std::sqrt(3.0) * std::pow(2.0, 1.5)));
    CHECK(lc.pass);

    for (const auto& m : {L, Measure::uniform(0, 1), Measure::exponential(1)}) CHECK(check_psi1_bound(m).pass);
    for (double p : {1.0, 2.0, 3.0}) CHECK(check_moment_growth(Measure::gaussian(0, 1), p).pass);
}

TEST_CASE("C_p sequence")
{
    CHECK(cp_constant(2) == doctest::Approx(std::pow(2.0, 5.0 / 3.0) / std::pow(3.0, 5.0 / 6.0)).epsilon(1e-12));
    const auto cp = cp_sequence({2, 3, 5, 10, 100, 1000});
    for (std::size_t i = 1; i < cp.size(); ++i) CHECK(cp[i] < cp[i - 1]);
    CHECK(cp.back() < 1.01);
    CHECK_THROWS(cp_constant(1.0));
}

TEST_CASE("best constant sequences")
{
    const std::vector<double> deltas{1e-1, 1e-2, 1e-3};
    const auto L = estimate_best_constant(Measure::laplace(0, 1), std::nullopt, deltas);
    CHECK(L.monotone);
    CHECK(L.limit_estimate == doctest::Approx(1.0).epsilon(0.02));
    const auto U = estimate_best_constant(Measure::uniform(0, 1), std::nullopt, deltas);
    CHECK(U.monotone);
    CHECK(U.limit_estimate == doctest::Approx(0.5).epsilon(0.02));
    for (double r : L.ratios) CHECK(r <= L.target * (1 + 1e-6));
}

TEST_CASE("certificate finalisation")
{
    InequalityCertificate c;
    c.lhs = 1.0;
    c.rhs = INFINITY;
    finalize(c, default_pass_tolerance);
    CHECK(c.pass);
    CHECK(c.status == "uninformative");
    c.rhs = 0.5;
    finalize(c, default_pass_tolerance);
    CHECK_FALSE(c.pass);
    CHECK(c.status == "fail");
    CHECK(c.ratio == doctest::Approx(2.0));
}
