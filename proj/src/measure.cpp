#include "cheeger/measure.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/erf.hpp>

#include "cheeger/errors.hpp"
#include "cheeger/roots.hpp"

namespace cheeger {

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

// Lower-tail quantile of Beta(a, b): Newton on w = log y for log I_y(a, b) = log t, which is
// close to linear over hundreds of decades. Bisection keeps the iterate inside the bracket.
double beta_lower_tail(double a, double b, double t, double log_norm)
{
    if (!(t > 0.0)) return 0.0;
    if (t >= 1.0) return 1.0;
    const double log_t = std::log(t);
    double lo = -740.0, hi = 0.0;
    double w = std::clamp((std::log(t * a) + log_norm) / a, lo + 1.0, -1e-3);
    for (int it = 0; it < 200; ++it) {
        const double y = std::exp(w);
        const double cdf = boost::math::ibeta(a, b, y);
        const double r = std::log(cdf) - log_t;
        if (r == 0.0) return y;
        if (r < 0.0) lo = w;
        else hi = w;
        // d/dw log I = f(y) y / I
        const double slope = std::exp(a * w + (b - 1.0) * std::log1p(-y) - log_norm) / cdf;
        double next = w - r / slope;
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (std::abs(next - w) <= 1e-15 * std::max(1.0, std::abs(w)) || hi - lo <= 1e-15 * std::max(1.0, std::abs(lo)))
            return std::exp(next);
        w = next;
    }
    return std::exp(w);
}

std::string format_number(double v)
{
    std::ostringstream os;
    os << v;
    return os.str();
}

void require_positive(double v, const char* what)
{
    if (!(v > 0.0) || !std::isfinite(v)) throw DomainError(std::string(what) + " must be positive and finite");
}

void require_finite(double v, const char* what)
{
    if (!std::isfinite(v)) throw DomainError(std::string(what) + " must be finite");
}

} // namespace

std::string to_string(Family family)
{
    switch (family) {
    case Family::gaussian: return "gaussian";
    case Family::laplace: return "laplace";
    case Family::exponential: return "exponential";
    case Family::uniform: return "uniform";
    case Family::logistic: return "logistic";
    case Family::beta: return "beta";
    case Family::tabulated: return "tabulated";
    }
    return "unknown";
}

// ---------------------------------------------------------------------------------------------
// TabulatedDensity

TabulatedDensity::TabulatedDensity(std::vector<double> nodes, std::vector<double> values)
    : nodes_(std::move(nodes)), values_(std::move(values))
{
    if (nodes_.size() != values_.size())
        throw IngestionError("tabulated density: node and value counts differ");
    if (nodes_.size() < min_nodes)
        throw IngestionError("tabulated density: at least " + std::to_string(min_nodes) + " nodes required, got " +
                             std::to_string(nodes_.size()));
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        if (!std::isfinite(nodes_[i]) || !std::isfinite(values_[i]))
            throw IngestionError("tabulated density: non-finite entry at row " + std::to_string(i));
        if (values_[i] < 0.0)
            throw IngestionError("tabulated density: negative density at row " + std::to_string(i));
        // zeros are allowed only at the two end nodes; interior zero plateaus would make Is = 0
        // trivially and break the quantile map
        if (values_[i] == 0.0 && i > 0 && i + 1 < nodes_.size())
            throw IngestionError("tabulated density: zero density inside the support at row " + std::to_string(i));
        if (i > 0 && !(nodes_[i] > nodes_[i - 1]))
            throw IngestionError("tabulated density: nodes not strictly increasing at row " + std::to_string(i));
    }
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < nodes_.size(); ++i)
        total += 0.5 * (values_[i] + values_[i + 1]) * (nodes_[i + 1] - nodes_[i]);
    if (!(total > 0.0)) throw IngestionError("tabulated density: all samples are zero");
    for (auto& v : values_) v /= total;
    build_cumulative();
}

void TabulatedDensity::build_cumulative()
{
    const std::size_t n = nodes_.size();
    cum_.assign(n, 0.0);
    cum_tail_.assign(n, 0.0);
    for (std::size_t i = 0; i + 1 < n; ++i)
        cum_[i + 1] = cum_[i] + 0.5 * (values_[i] + values_[i + 1]) * (nodes_[i + 1] - nodes_[i]);
    for (std::size_t i = n - 1; i > 0; --i)
        cum_tail_[i - 1] = cum_tail_[i] + 0.5 * (values_[i - 1] + values_[i]) * (nodes_[i] - nodes_[i - 1]);
    const double total = cum_.back();
    for (auto& c : cum_) c /= total;
    for (auto& c : cum_tail_) c /= total;
    cum_.back() = 1.0;
    cum_tail_.front() = 1.0;
}

double TabulatedDensity::segment_mass(std::size_t i, double x) const
{
    const double h = nodes_[i + 1] - nodes_[i];
    const double d = x - nodes_[i];
    const double slope = (values_[i + 1] - values_[i]) / h;
    return values_[i] * d + 0.5 * slope * d * d;
}

double TabulatedDensity::pdf(double x) const
{
    if (!(x > nodes_.front() && x < nodes_.back())) return 0.0;
    const auto it = std::upper_bound(nodes_.begin(), nodes_.end(), x);
    const std::size_t i = static_cast<std::size_t>(it - nodes_.begin()) - 1;
    const double w = (x - nodes_[i]) / (nodes_[i + 1] - nodes_[i]);
    return values_[i] + w * (values_[i + 1] - values_[i]);
}

double TabulatedDensity::cdf(double x) const
{
    if (x <= nodes_.front()) return 0.0;
    if (x >= nodes_.back()) return 1.0;
    const auto it = std::upper_bound(nodes_.begin(), nodes_.end(), x);
    const std::size_t i = static_cast<std::size_t>(it - nodes_.begin()) - 1;
    return std::clamp(cum_[i] + segment_mass(i, x), cum_[i], cum_[i + 1]);
}

double TabulatedDensity::sf(double x) const
{
    if (x <= nodes_.front()) return 1.0;
    if (x >= nodes_.back()) return 0.0;
    const auto it = std::upper_bound(nodes_.begin(), nodes_.end(), x);
    const std::size_t i = static_cast<std::size_t>(it - nodes_.begin()) - 1;
    const double seg = 0.5 * (values_[i] + values_[i + 1]) * (nodes_[i + 1] - nodes_[i]);
    return std::clamp(cum_tail_[i + 1] + (seg - segment_mass(i, x)), cum_tail_[i + 1], cum_tail_[i]);
}

double TabulatedDensity::lower_quantile(double t) const
{
    // first node whose cumulative mass reaches t
    const auto it = std::lower_bound(cum_.begin(), cum_.end(), t);
    std::size_t i = static_cast<std::size_t>(it - cum_.begin());
    i = std::clamp<std::size_t>(i, 1, nodes_.size() - 1) - 1;
    const double r = t - cum_[i];
    const double h = nodes_[i + 1] - nodes_[i];
    const double slope = (values_[i + 1] - values_[i]) / h;
    const double disc = values_[i] * values_[i] + 2.0 * slope * r;
    const double denom = values_[i] + std::sqrt(std::max(disc, 0.0));
    const double d = denom > 0.0 ? 2.0 * r / denom : 0.0;
    return std::clamp(nodes_[i] + d, nodes_[i], nodes_[i + 1]);
}

double TabulatedDensity::upper_quantile(double u) const
{
    // last node whose tail mass still reaches u
    const std::size_t n = nodes_.size();
    std::size_t j = n - 1;
    {
        // cum_tail_ is decreasing; find smallest j with cum_tail_[j] <= u, search from the right
        std::size_t lo = 0, hi = n - 1;
        while (lo < hi) {
            const std::size_t mid = (lo + hi) / 2;
            if (cum_tail_[mid] <= u) hi = mid;
            else lo = mid + 1;
        }
        j = std::clamp<std::size_t>(lo, 1, n - 1);
    }
    const std::size_t i = j - 1;
    const double r = u - cum_tail_[j];
    const double h = nodes_[j] - nodes_[i];
    const double slope = (values_[j] - values_[i]) / h;
    const double disc = values_[j] * values_[j] - 2.0 * slope * r;
    const double denom = values_[j] + std::sqrt(std::max(disc, 0.0));
    const double e = denom > 0.0 ? 2.0 * r / denom : 0.0;
    return std::clamp(nodes_[j] - e, nodes_[i], nodes_[j]);
}

TabulatedDensity TabulatedDensity::rescaled(double c) const
{
    TabulatedDensity out;
    out.nodes_.reserve(nodes_.size());
    out.values_.reserve(values_.size());
    for (double x : nodes_) out.nodes_.push_back(x / c);
    for (double v : values_) out.values_.push_back(v * c);
    out.cum_ = cum_;
    out.cum_tail_ = cum_tail_;
    return out;
}

// ---------------------------------------------------------------------------------------------
// Measure construction

Measure Measure::gaussian(double mean, double sd)
{
    require_finite(mean, "gaussian mean");
    require_positive(sd, "gaussian sd");
    Measure m;
    m.family_ = Family::gaussian;
    m.params_ = {mean, sd, 0.0};
    m.param_count_ = 2;
    m.support_ = {-inf, inf};
    m.log_concavity_ = LogConcavity::strictly_log_concave;
    return m;
}

Measure Measure::laplace(double loc, double scale)
{
    require_finite(loc, "laplace location");
    require_positive(scale, "laplace scale");
    Measure m;
    m.family_ = Family::laplace;
    m.params_ = {loc, scale, 0.0};
    m.param_count_ = 2;
    m.support_ = {-inf, inf};
    m.log_concavity_ = LogConcavity::log_concave;
    return m;
}

Measure Measure::exponential(double rate)
{
    require_positive(rate, "exponential rate");
    Measure m;
    m.family_ = Family::exponential;
    m.params_ = {rate, 0.0, 0.0};
    m.param_count_ = 1;
    m.support_ = {0.0, inf};
    m.log_concavity_ = LogConcavity::log_concave;
    return m;
}

Measure Measure::uniform(double lo, double hi)
{
    require_finite(lo, "uniform lower bound");
    require_finite(hi, "uniform upper bound");
    if (!(hi > lo)) throw DomainError("uniform requires lo < hi");
    Measure m;
    m.family_ = Family::uniform;
    m.params_ = {lo, hi, 0.0};
    m.param_count_ = 2;
    m.support_ = {lo, hi};
    m.log_concavity_ = LogConcavity::log_concave;
    return m;
}

Measure Measure::logistic(double loc, double scale)
{
    require_finite(loc, "logistic location");
    require_positive(scale, "logistic scale");
    Measure m;
    m.family_ = Family::logistic;
    m.params_ = {loc, scale, 0.0};
    m.param_count_ = 2;
    m.support_ = {-inf, inf};
    m.log_concavity_ = LogConcavity::strictly_log_concave;
    return m;
}

Measure Measure::beta(double alpha, double beta, double scale)
{
    require_positive(alpha, "beta alpha");
    require_positive(beta, "beta beta");
    require_positive(scale, "beta scale");
    Measure m;
    m.family_ = Family::beta;
    m.params_ = {alpha, beta, scale};
    m.param_count_ = 3;
    m.support_ = {0.0, scale};
    if (alpha >= 1.0 && beta >= 1.0)
        m.log_concavity_ = (alpha > 1.0 || beta > 1.0) ? LogConcavity::strictly_log_concave : LogConcavity::log_concave;
    m.beta_log_norm_ = std::lgamma(alpha) + std::lgamma(beta) - std::lgamma(alpha + beta);
    return m;
}

Measure Measure::tabulated(TabulatedDensity density)
{
    Measure m;
    m.family_ = Family::tabulated;
    m.param_count_ = 0;
    m.support_ = {density.nodes().front(), density.nodes().back()};
    m.log_concavity_ = LogConcavity::none;
    m.tabulated_ = std::make_shared<const TabulatedDensity>(std::move(density));
    return m;
}

Measure ingest_tabulated(std::vector<double> nodes, std::vector<double> values)
{
    return Measure::tabulated(TabulatedDensity(std::move(nodes), std::move(values)));
}

Measure read_tabulated_file(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) throw IngestionError("cannot open tabulated density file '" + path.string() + "'");
    std::vector<double> nodes, values;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        double x, v;
        if (!(ls >> x)) continue; // blank or comment-only line
        if (!(ls >> v))
            throw IngestionError(path.string() + ":" + std::to_string(line_no) + ": expected `x density` pair");
        std::string extra;
        if (ls >> extra)
            throw IngestionError(path.string() + ":" + std::to_string(line_no) + ": unexpected trailing token '" +
                                 extra + "'");
        nodes.push_back(x);
        values.push_back(v);
    }
    return ingest_tabulated(std::move(nodes), std::move(values));
}

// ---------------------------------------------------------------------------------------------
// Evaluation

double Measure::pdf(double x) const
{
    if (!support_.contains(x)) return 0.0;
    const auto& p = params_;
    switch (family_) {
    case Family::gaussian: {
        const double z = (x - p[0]) / p[1];
        return std::exp(-0.5 * z * z) / (p[1] * std::sqrt(2.0 * std::numbers::pi));
    }
    case Family::laplace: return std::exp(-std::abs(x - p[0]) / p[1]) / (2.0 * p[1]);
    case Family::exponential: return p[0] * std::exp(-p[0] * x);
    case Family::uniform: return 1.0 / (p[1] - p[0]);
    case Family::logistic: {
        const double e = std::exp(-std::abs(x - p[0]) / p[1]);
        return e / (p[1] * (1.0 + e) * (1.0 + e));
    }
    case Family::beta: {
        const double y = x / p[2];
        return std::exp((p[0] - 1.0) * std::log(y) + (p[1] - 1.0) * std::log1p(-y) - beta_log_norm_) / p[2];
    }
    case Family::tabulated: return tabulated_->pdf(x);
    }
    return 0.0;
}

double Measure::cdf(double x) const
{
    if (x <= support_.a) return 0.0;
    if (x >= support_.b) return 1.0;
    const auto& p = params_;
    switch (family_) {
    case Family::gaussian: return 0.5 * std::erfc(-(x - p[0]) / (p[1] * std::numbers::sqrt2));
    case Family::laplace: {
        const double z = (x - p[0]) / p[1];
        return z < 0.0 ? 0.5 * std::exp(z) : 1.0 - 0.5 * std::exp(-z);
    }
    case Family::exponential: return -std::expm1(-p[0] * x);
    case Family::uniform: return (x - p[0]) / (p[1] - p[0]);
    case Family::logistic: return 1.0 / (1.0 + std::exp(-(x - p[0]) / p[1]));
    case Family::beta: return boost::math::ibeta(p[0], p[1], x / p[2]);
    case Family::tabulated: return tabulated_->cdf(x);
    }
    return 0.0;
}

double Measure::sf(double x) const
{
    if (x <= support_.a) return 1.0;
    if (x >= support_.b) return 0.0;
    const auto& p = params_;
    switch (family_) {
    case Family::gaussian: return 0.5 * std::erfc((x - p[0]) / (p[1] * std::numbers::sqrt2));
    case Family::laplace: {
        const double z = (x - p[0]) / p[1];
        return z > 0.0 ? 0.5 * std::exp(-z) : 1.0 - 0.5 * std::exp(z);
    }
    case Family::exponential: return std::exp(-p[0] * x);
    case Family::uniform: return (p[1] - x) / (p[1] - p[0]);
    case Family::logistic: return 1.0 / (1.0 + std::exp((x - p[0]) / p[1]));
    case Family::beta: return boost::math::ibetac(p[0], p[1], x / p[2]);
    case Family::tabulated: return tabulated_->sf(x);
    }
    return 0.0;
}

double Measure::quantile(double t) const
{
    if (!(t > 0.0 && t < 1.0)) throw DomainError("quantile level must lie in (0,1)");
    return t <= 0.5 ? lower_quantile(t) : upper_quantile(1.0 - t);
}

double Measure::lower_quantile(double t) const
{
    const auto& p = params_;
    switch (family_) {
    case Family::gaussian: return p[0] - p[1] * std::numbers::sqrt2 * boost::math::erfc_inv(2.0 * t);
    case Family::laplace:
        return t <= 0.5 ? p[0] + p[1] * std::log(2.0 * t) : p[0] - p[1] * std::log(2.0 * (1.0 - t));
    case Family::exponential: return -std::log1p(-t) / p[0];
    case Family::uniform: return p[0] + t * (p[1] - p[0]);
    case Family::logistic: return p[0] + p[1] * (std::log(t) - std::log1p(-t));
    case Family::beta: {
        return beta_lower_tail(p[0], p[1], t, beta_log_norm_) * p[2];
    }
    case Family::tabulated: return tabulated_->lower_quantile(t);
    }
    return 0.0;
}

double Measure::upper_quantile(double u) const
{
    const auto& p = params_;
    switch (family_) {
    case Family::gaussian: return p[0] + p[1] * std::numbers::sqrt2 * boost::math::erfc_inv(2.0 * u);
    case Family::laplace:
        return u <= 0.5 ? p[0] - p[1] * std::log(2.0 * u) : p[0] + p[1] * std::log(2.0 * (1.0 - u));
    case Family::exponential: return -std::log(u) / p[0];
    case Family::uniform: return p[1] - u * (p[1] - p[0]);
    case Family::logistic: return p[0] + p[1] * (std::log1p(-u) - std::log(u));
    case Family::beta: {
        // 1 - X ~ Beta(b, a)
        return (1.0 - beta_lower_tail(p[1], p[0], u, beta_log_norm_)) * p[2];
    }
    case Family::tabulated: return tabulated_->upper_quantile(u);
    }
    return 0.0;
}

double Measure::potential_second_derivative(double x) const
{
    if (!has_potential_curvature())
        throw UnsupportedMeasure(describe() + " is not strictly log-concave; no potential curvature available");
    const auto& p = params_;
    switch (family_) {
    case Family::gaussian: return 1.0 / (p[1] * p[1]);
    case Family::logistic: return 2.0 * pdf(x) / p[1];
    case Family::beta: {
        const double s = p[2];
        return (p[0] - 1.0) / (x * x) + (p[1] - 1.0) / ((s - x) * (s - x));
    }
    default: break;
    }
    throw UnsupportedMeasure(describe() + " has no potential curvature");
}

Measure Measure::rescale(double c) const
{
    if (!(c > 0.0) || !std::isfinite(c)) throw DomainError("rescale factor must be positive");
    const auto& p = params_;
    switch (family_) {
    case Family::gaussian: return gaussian(p[0] / c, p[1] / c);
    case Family::laplace: return laplace(p[0] / c, p[1] / c);
    case Family::exponential: return exponential(p[0] * c);
    case Family::uniform: return uniform(p[0] / c, p[1] / c);
    case Family::logistic: return logistic(p[0] / c, p[1] / c);
    case Family::beta: return beta(p[0], p[1], p[2] / c);
    case Family::tabulated: return tabulated(tabulated_->rescaled(c));
    }
    return *this;
}

std::string Measure::describe() const
{
    std::string out = to_string(family_);
    if (family_ == Family::tabulated) {
        out += "(" + std::to_string(tabulated_->nodes().size()) + " nodes)";
        return out;
    }
    std::size_t shown = param_count_;
    if (family_ == Family::beta && params_[2] == 1.0) shown = 2;
    out += "(";
    for (std::size_t i = 0; i < shown; ++i) {
        if (i) out += ",";
        out += format_number(params_[i]);
    }
    out += ")";
    return out;
}

} // namespace cheeger
