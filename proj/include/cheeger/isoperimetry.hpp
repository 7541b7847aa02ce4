#pragma once

#include <iosfwd>
#include <span>
#include <vector>

#include "cheeger/measure.hpp"

namespace cheeger {

/// Pointwise ratio f(x) / min(F(x), 1 - F(x)) on a quantile grid together with its refined
/// minimum, the isoperimetric (Cheeger) constant of the measure.
struct IsoperimetricProfile {
    std::vector<double> grid;      ///< quantile levels t_i in (0,1)
    std::vector<double> abscissae; ///< x_i = Q(t_i)
    std::vector<double> ratios;
    double argmin_t = 0.5;
    double argmin_x = 0.0;
    double is_value = 0.0;
    bool diverging_tail = false; ///< ratio decreases without bound toward an endpoint; is_value = 0
    bool clamped = false;        ///< tabulated measure: evaluation restricted to the node range
};

inline constexpr int default_iso_grid_size = 1024;
inline constexpr int default_iso_refine_iters = 60;

/// f(x) / min(F(x), 1 - F(x)); throws DomainError outside the open support.
double isoperimetric_ratio(const Measure& m, double x);

/// Ratio expressed at quantile level t (uses the exact tail masses t and 1 - t).
double isoperimetric_ratio_at_level(const Measure& m, double t);

/// Grid minimisation over t_i = i / (grid_size + 1) with golden-section refinement around the
/// three lowest grid points. Throws DomainError for grid_size < 64 and ComputationError when the
/// density vanishes on the grid.
IsoperimetricProfile isoperimetric_constant(const Measure& m, int grid_size = default_iso_grid_size,
                                            int refine_iters = default_iso_refine_iters);

/// Tail guard: given ratios sampled at successively smaller tail masses, reports whether the
/// sequence keeps decreasing (three successive strict decreases) below `interior_min` without
/// settling, which indicates Is = 0.
bool tail_diverges(std::span<const double> tail_ratios, double interior_min);

/// Writes the profile as CSV with header `t,x,ratio`.
void write_profile_csv(std::ostream& out, const IsoperimetricProfile& profile);

} // namespace cheeger
