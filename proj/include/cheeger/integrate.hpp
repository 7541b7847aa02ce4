#pragma once

#include <functional>
#include <limits>
#include <span>
#include <vector>

#include "cheeger/funcs.hpp"
#include "cheeger/measure.hpp"
#include "cheeger/quadrature.hpp"

namespace cheeger {

/// A point of the support described by its abscissa and both tail probabilities, each of which
/// is accurate to full relative precision (lower = F(x), upper = 1 - F(x)).
struct Level {
    double x;
    double lower;
    double upper;
    double pdf;
};

using LevelFunction = std::function<double(const Level&)>;

/// Probability levels are parameterised per half: on the lower half t = exp(-s)/2, on the upper
/// half 1 - t = exp(-s)/2, with s in [0, max_tail_depth]. This reaches tail probabilities of
/// about 1e-300, so integrands with algebraic singularities at the endpoints of (0,1) and
/// slowly decaying tails integrate accurately.
inline constexpr double max_tail_depth = 690.0;

enum class Half { lower, upper };

/// Position on the probability axis.
struct ProbabilityPoint {
    Half half;
    double depth; ///< s in [0, max_tail_depth]
};

double tail_probability(double depth);
Level level_at(const Measure& m, ProbabilityPoint p);
/// Level of an abscissa, tail probabilities evaluated by cdf and sf.
Level level_of(const Measure& m, double x);
ProbabilityPoint probability_point(const Measure& m, double x);

/// Integral of phi over [x_lo, x_hi] with respect to dF (x_lo/x_hi may be infinite).
/// Panels are split at the given abscissae. Throws IntegrationError on non-convergence or when
/// the integrand fails to decay in an infinite-probability tail.
double integrate_dF(const Measure& m, const LevelFunction& phi,
                    double x_lo = -std::numeric_limits<double>::infinity(),
                    double x_hi = std::numeric_limits<double>::infinity(), std::span<const double> knots = {},
                    const QuadratureOptions& opt = {});

/// Integral of phi over one half between two depths (depth_lo < depth_hi).
double integrate_half(const Measure& m, const LevelFunction& phi, Half half, double depth_lo, double depth_hi,
                      std::span<const double> knot_depths = {}, const QuadratureOptions& opt = {});

/// Depths of the abscissae falling on the given half.
std::vector<double> knot_depths(const Measure& m, std::span<const double> knots, Half half);

/// Tail integrals of phi dF with a cached grid of cumulative values: lower(x) = int_{(-inf,x]}
/// phi dF and upper(x) = int_{(x,inf)} phi dF. Queries complete the nearest cached value with a
/// single-cell quadrature, so they are exact to quadrature tolerance rather than interpolated.
class CumulativeIntegral {
public:
    static constexpr std::size_t default_nodes_per_half = 1024;

    CumulativeIntegral(const Measure& m, LevelFunction phi, std::vector<double> knots,
                       std::size_t nodes_per_half = default_nodes_per_half, const QuadratureOptions& opt = {});

    double total() const { return total_; }
    double lower(const Level& lv) const;
    double upper(const Level& lv) const;

    const Measure& measure() const { return measure_; }
    std::span<const double> grid() const { return grid_; }
    std::span<const double> knots() const { return knots_; }

private:
    double partial(Half half, double depth) const;

    Measure measure_;
    LevelFunction phi_;
    std::vector<double> knots_;
    std::vector<double> lower_knot_depths_, upper_knot_depths_;
    QuadratureOptions opt_;
    std::vector<double> grid_;      ///< shared depth grid, increasing
    std::vector<double> lower_cum_; ///< tail integral beyond grid_[j] on the lower half
    std::vector<double> upper_cum_;
    double total_ = 0.0;
};

/// Supremum of |phi| over the probability axis: dense depth grid on both halves followed by
/// golden-section refinement around the best grid point. Returns the value and its abscissa.
struct SupResult {
    double value;
    double x;
};
SupResult sup_abs_over_levels(const Measure& m, const LevelFunction& phi, std::span<const double> knots = {},
                              std::size_t nodes_per_half = 512, int refine_iters = 60);

// Moments of test functions.

/// E_m[g]; exact for constant functions.
double expectation(const Measure& m, const DifferentiableFunction& g, const QuadratureOptions& opt = {});
/// (E|g|^p)^{1/p}, p >= 1.
double lp_norm(const Measure& m, const DifferentiableFunction& g, double p, const QuadratureOptions& opt = {});
/// L_p norm of the derivative g'.
double derivative_lp_norm(const Measure& m, const DifferentiableFunction& g, double p,
                          const QuadratureOptions& opt = {});
/// Essential supremum of |g| over the support (grid + refinement).
double sup_norm(const Measure& m, const DifferentiableFunction& g);

} // namespace cheeger
