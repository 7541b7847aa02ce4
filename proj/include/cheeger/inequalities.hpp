#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cheeger/certificate.hpp"
#include "cheeger/funcs.hpp"
#include "cheeger/measure.hpp"
#include "cheeger/young.hpp"

namespace cheeger {

/// Isoperimetric constant with the default grid (0 when a tail diverges).
double isoperimetric_value(const Measure& m);

/// Median of the pushforward of m under g, i.e. a minimiser of c -> E|g - c|. Monotone builders
/// use g(median of m); other functions use golden-section search over the range of g.
double pushforward_median(const Measure& m, const DifferentiableFunction& g);

// Covariance inequalities. Each returns lhs = |Cov(g, h)| against the stated bound; a zero
// isoperimetric constant makes the bound +infinity and the certificate uninformative.

/// |Cov| <= Is^{-1} ||g'||_1 ||T_m h_0||_inf with h_0 = h - E h and m the median.
InequalityCertificate check_cov_l1_linf(const Measure& m, const DifferentiableFunction& g,
                                        const DifferentiableFunction& h, double tol = default_pass_tolerance);
/// |Cov| <= Is^{-1} ||g'||_p ||T_m h_0||_q, 1 < p < inf, q = p/(p-1).
InequalityCertificate check_cov_lp_lq_T(const Measure& m, const DifferentiableFunction& g,
                                        const DifferentiableFunction& h, double p,
                                        double tol = default_pass_tolerance);
/// |Cov| <= p Is^{-1} ||g'||_p ||h_0||_q; p = 1 uses ||h_0||_inf with constant 1.
InequalityCertificate check_cov_lp_lq(const Measure& m, const DifferentiableFunction& g,
                                      const DifferentiableFunction& h, double p, double tol = default_pass_tolerance);
/// Var(g) <= 4 Is^{-2} ||g'||_2^2.
InequalityCertificate check_cheeger(const Measure& m, const DifferentiableFunction& g,
                                    double tol = default_pass_tolerance);
/// |Cov| <= 2 (p + q) Is^{-2} ||g'||_p ||h'||_q, 1 < p < inf.
InequalityCertificate check_cov_final(const Measure& m, const DifferentiableFunction& g,
                                      const DifferentiableFunction& h, double p, double tol = default_pass_tolerance);
/// |Cov| <= ||g'||_1 sup |h' / phi''| for strictly log-concave m = exp(-phi).
InequalityCertificate check_brascamp_lieb(const Measure& m, const DifferentiableFunction& g,
                                          const DifferentiableFunction& h, double tol = default_pass_tolerance);

enum class Side { left, right };
std::string to_string(Side s);

/// |Cov| <= ||g'||_1 sup_x |F(x) E h - int_{-inf}^x h dF| / f(x) (left form) or with the
/// mirrored functional (1 - F(x)) E h - int_x^inf h dF (right form).
InequalityCertificate check_cov_variant(const Measure& m, const DifferentiableFunction& g,
                                        const DifferentiableFunction& h, Side side,
                                        double tol = default_pass_tolerance);

// Lp-Poincare family.

enum class PoincareVariant {
    centered_2p, ///< ||u - Eu||_p <= 2p Is^{-1} ||u'||_p
    centered_p,  ///< constant p, needs E[sign(u - Eu)|u - Eu|^{p-1}] = 0
    raw_2p,      ///< ||u||_p <= 2p Is^{-1} ||u'||_p, needs p odd and E[u^p] = 0
    raw_p,       ///< constant p, needs additionally E[sign(u^p)] = 0
};
std::string to_string(PoincareVariant v);
std::optional<PoincareVariant> parse_poincare_variant(const std::string& s);

/// Side conditions are computed and stored for every variant; a conditional variant whose
/// hypothesis fails at tolerance 1e-6 throws HypothesisViolated.
InequalityCertificate check_lp_poincare(const Measure& m, const DifferentiableFunction& u, double p,
                                        PoincareVariant variant, double tol = default_pass_tolerance);

/// Poincare certificates for u = x^k, k in k_values.
std::vector<InequalityCertificate> sharpness_sweep(const Measure& m, double p, const std::vector<int>& k_values,
                                                   PoincareVariant variant = PoincareVariant::centered_p,
                                                   double tol = default_pass_tolerance);

/// E|g - med g| <= E|g - E g| <= 2 E|g - med g|; lhs/rhs describe the upper inequality and
/// the lower one is recorded in side_conditions and enforced in `pass`.
InequalityCertificate check_mean_median_sandwich(const Measure& m, const DifferentiableFunction& g,
                                                 double tol = default_pass_tolerance);

// Orlicz and moment bounds.

enum class Centering { median_centered, mean_centered };
std::string to_string(Centering c);
std::optional<Centering> parse_centering(const std::string& s);

/// ||f - f(med)||_N <= C_N Is^{-1} ||f'||_N, or with mean centering and constant 2 C_N.
InequalityCertificate check_orlicz(const Measure& m, const DifferentiableFunction& f, const YoungFunction& n,
                                   Centering which, double tol = default_pass_tolerance);
/// ||X - EX||_p <= 2 p Is^{-1}.
InequalityCertificate check_moment_growth(const Measure& m, double p, double tol = default_pass_tolerance);
/// ||X - EX||_psi1 <= 4 Is^{-1}.
InequalityCertificate check_psi1_bound(const Measure& m, double tol = default_pass_tolerance);
/// ||X||_{p+1} <= (p^2 / ((p-1) Is(law of X/||X||_p)))^{1/(p+1)} ||X||_p for centered m, p > 1.
InequalityCertificate check_moment_comparison(const Measure& m, double p, double tol = default_pass_tolerance);
/// ||X||_{p+1} <= (sqrt(3) p^2 / (p-1))^{1/(p+1)} ||X||_p for centered log-concave m, p >= 2.
InequalityCertificate check_logconcave_moments(const Measure& m, double p, double tol = default_pass_tolerance);

/// C_p = (p/(p+1)) (sqrt(3) p^2 / (p-1))^{1/(p+1)}, p > 1.
double cp_constant(double p);
/// C_p for each p; throws ComputationError if the values are not strictly decreasing in p.
std::vector<double> cp_sequence(const std::vector<double>& p_values);

// Best constant of the L1-Linf covariance inequality.

struct BestConstantEstimate {
    std::vector<double> deltas;
    std::vector<double> ratios;
    double limit_estimate; ///< NaN when the ratio sequence is not monotone
    double target;         ///< 1 / Is
    bool monotone;
    double center;        ///< abscissa of the ramp centre
    std::string mode;     ///< "extremal" or the label of g
};

/// With g given: h = ramp(median, delta) and ratio |Cov(g,h)| / (||g'||_1 ||T_m h_0||_inf).
/// Without g: g = h = ramp(x*, delta) at the minimiser x* of the isoperimetric ratio, the
/// extremal pair for which the ratio tends to 1/Is. The limit is extrapolated from the last two
/// ratios assuming first-order convergence in delta.
BestConstantEstimate estimate_best_constant(const Measure& m, const std::optional<DifferentiableFunction>& g,
                                            const std::vector<double>& deltas);

} // namespace cheeger
