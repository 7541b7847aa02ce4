#pragma once

#include <iosfwd>
#include <limits>
#include <memory>

#include "cheeger/certificate.hpp"
#include "cheeger/funcs.hpp"
#include "cheeger/integrate.hpp"
#include "cheeger/measure.hpp"

namespace cheeger {

/// Covariance kernel K(x, y) = F(min(x, y)) - F(x) F(y).
double kernel_eval(const Measure& m, double x, double y);

/// Cov(g, h) = E[(g - Eg)(h - Eh)] by quadrature against dF.
double covariance_direct(const Measure& m, const DifferentiableFunction& g, const DifferentiableFunction& h,
                         const QuadratureOptions& opt = {});

/// Cov(g, h) = double integral of g'(x) K(x, y) h'(y). The inner integral is replaced by the
/// tail form F(x) E[h] - int_{-inf}^x h dF (mirrored above the median), leaving one quadrature.
double covariance_kernel(const Measure& m, const DifferentiableFunction& g, const DifferentiableFunction& h,
                         const QuadratureOptions& opt = {});

/// Both sides of a tail identity: `direct` from integrals of h, `kernel` = int K(z, y) h'(y) dy.
struct TailIdentity {
    double direct;
    double kernel;
};

/// F(z) E[h] - int_{(-inf,z]} h dF  versus  int K(z,y) h'(y) dy.
TailIdentity tail_identity_left(const Measure& m, const DifferentiableFunction& h, double z,
                                const QuadratureOptions& opt = {});
/// -(1 - F(z)) E[h] + int_{(z,inf)} h dF  versus  int K(z,y) h'(y) dy.
TailIdentity tail_identity_right(const Measure& m, const DifferentiableFunction& h, double z,
                                 const QuadratureOptions& opt = {});

/// Piecewise conditional average of h split at k:
///   T_k h(x) = (1/F(x)) int_{(-inf,x]} h dF        for x <= k,
///   T_k h(x) = (1/(1-F(x))) int_{(x,inf)} h dF      for x >  k.
/// The cumulative integrals are cached on a probability grid at construction.
class TkTransform {
public:
    TkTransform(const Measure& m, DifferentiableFunction h, double k);

    const Measure& measure() const { return cumulative_->measure(); }
    const DifferentiableFunction& source() const { return h_; }
    double split() const { return k_; }
    double mean() const { return cumulative_->total(); }

    double operator()(double x) const;
    double at_level(const Level& lv) const;
    double left_integral(const Level& lv) const { return cumulative_->lower(lv); }
    double right_integral(const Level& lv) const { return cumulative_->upper(lv); }

    /// Knots of h plus the split point.
    std::vector<double> knots() const;

private:
    DifferentiableFunction h_;
    double k_;
    std::shared_ptr<const CumulativeIntegral> cumulative_;
};

TkTransform t_transform(const Measure& m, const DifferentiableFunction& h, double k);

/// ||T_k h||_p in L_p(F); p = +infinity gives the supremum over the probability axis.
double t_norm(const Measure& m, const DifferentiableFunction& h, double k, double p);
double t_norm(const TkTransform& t, double p);

/// ||T_k h||_p <= p/(p-1) ||h||_p. Throws DomainError unless p > 1.
InequalityCertificate hardy_certificate(const Measure& m, const DifferentiableFunction& h, double k, double p,
                                        double tol = default_pass_tolerance);

/// Writes the transform as CSV with header `t,x,Tkh` on `points` equally spaced levels.
void write_tk_csv(std::ostream& out, const TkTransform& t, int points = 512);

} // namespace cheeger
