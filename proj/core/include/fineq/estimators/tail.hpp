#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "fineq/geometry/hyperbolic.hpp"
#include "fineq/sampling/ensemble.hpp"
#include "fineq/transfer/profiles.hpp"

namespace fineq::estimators {

/// u(gamma) = max over grid nodes of d(gamma_t, y0).
std::vector<double> sup_distance(const sampling::Ensemble& ens, const geometry::HPoint& y0);
double sup_distance(const sampling::PathView& path, const geometry::HPoint& y0);

struct TailFitOptions {
    double confidence = 0.99;
    /// Log-spaced grid points between lower_fraction * max(u) and max(u); s = 0 is always included.
    int grid_points = 200;
    double lower_fraction = 1e-3;
    /// The fit region starts where the empirical survival drops below this.
    double fit_start_survival = 0.5;
    /// The fit region ends at the last grid point with at least this many exceedances.
    std::size_t anchor_min_count = 50;
    int fit_points = 40;
    int jackknife_groups = 20;
    bool extrapolate = true;
};

/// Least-squares slope of log survival against s^2 on the tail region, with a
/// delete-a-group jackknife error and one-sided Student-t bounds.
struct SlopeFit {
    double slope = 0.0;
    double std_error = 0.0;
    /// slope + t SE: slope < 0 with the requested confidence iff upper < 0.
    double upper = 0.0;
    double s_lo = 0.0;
    double s_hi = 0.0;
    std::size_t points = 0;
    double confidence = 0.99;
};

SlopeFit tail_slope_fit(std::span<const double> u, const TailFitOptions& opts = {});

/// Clopper-Pearson upper bound for P(u > s) from k exceedances in n draws.
double clopper_pearson_upper(std::size_t k, std::size_t n, double confidence);

/// Empirical upper-confidence survival bound of u, monotonised by a running
/// maximum from the right, optionally continued past the anchor by the
/// Gaussian tail with the fitted (conservative) rate -upper.
transfer::TailBound weight_tail(std::span<const double> u, const TailFitOptions& opts = {});
transfer::TailBound weight_tail(const sampling::Ensemble& ens, const geometry::HPoint& y0,
                                const TailFitOptions& opts = {});

}  // namespace fineq::estimators
