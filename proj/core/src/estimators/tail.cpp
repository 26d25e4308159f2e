#include "fineq/estimators/tail.hpp"

#include <algorithm>
#include <boost/math/distributions/students_t.hpp>
#include <boost/math/special_functions/beta.hpp>
#include <cmath>

#include "fineq/error.hpp"
#include "fineq/stats/summation.hpp"

namespace fineq::estimators {

namespace {

std::vector<double> sorted_copy(std::span<const double> u) {
    if (u.size() < 2) throw DataError("tail estimate needs at least two samples");
    std::vector<double> s(u.begin(), u.end());
    for (double v : s) {
        if (!(v >= 0.0) || !std::isfinite(v)) throw DataError("weight samples must be finite and non-negative");
    }
    std::sort(s.begin(), s.end());
    return s;
}

std::size_t exceedances(const std::vector<double>& sorted, double s) {
    return static_cast<std::size_t>(sorted.end() - std::upper_bound(sorted.begin(), sorted.end(), s));
}

struct Region {
    double lo;
    double hi;
};

Region fit_region(const std::vector<double>& sorted, const TailFitOptions& opts) {
    const std::size_t n = sorted.size();
    if (n <= opts.anchor_min_count) throw DataError("too few samples for a tail fit");
    const auto start_rank = static_cast<std::size_t>(std::floor((1.0 - opts.fit_start_survival) * n));
    const double lo = sorted[std::min(start_rank, n - 1)];
    const double hi = sorted[n - opts.anchor_min_count];
    if (!(hi > lo)) throw DataError("tail region is empty");
    return {lo, hi};
}

// OLS slope of log S(s) against s^2 over a fixed set of abscissae.
double ols_slope(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    stats::CompensatedSum sx, sy;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx.add(x[i]);
        sy.add(y[i]);
    }
    const double mx = sx.value() / n, my = sy.value() / n;
    stats::CompensatedSum sxy, sxx;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy.add((x[i] - mx) * (y[i] - my));
        sxx.add((x[i] - mx) * (x[i] - mx));
    }
    return sxy.value() / sxx.value();
}

double slope_on(const std::vector<double>& sorted, const std::vector<double>& s_points) {
    const double n = static_cast<double>(sorted.size());
    std::vector<double> x, y;
    for (double s : s_points) {
        const std::size_t k = exceedances(sorted, s);
        if (k == 0) continue;
        x.push_back(s * s);
        y.push_back(std::log(static_cast<double>(k) / n));
    }
    if (x.size() < 3) throw DataError("too few tail points for a slope fit");
    return ols_slope(x, y);
}

}  // namespace

double sup_distance(const sampling::PathView& path, const geometry::HPoint& y0) {
    const int D = path.dim;
    if (D != y0.dim() + 1) throw DomainError("path and y0 differ in dimension");
    double best = 0.0;
    for (std::size_t k = 0; k < path.size(); ++k) {
        const auto p = path.point(k);
        geometry::Ambient a(D);
        for (int c = 0; c < D; ++c) a[c] = p[c];
        best = std::max(best, geometry::dist(geometry::HPoint(std::move(a)), y0));
    }
    return best;
}

std::vector<double> sup_distance(const sampling::Ensemble& ens, const geometry::HPoint& y0) {
    if (!sampling::is_hyperbolic(ens.tag)) throw DomainError("weight tail needs a hyperbolic ensemble");
    std::vector<double> u(ens.n_paths);
    for (std::size_t p = 0; p < ens.n_paths; ++p) u[p] = sup_distance(ens.path(p), y0);
    return u;
}

double clopper_pearson_upper(std::size_t k, std::size_t n, double confidence) {
    if (n == 0 || k > n) throw DomainError("Clopper-Pearson needs 0 <= k <= n, n > 0");
    if (!(confidence > 0.0 && confidence < 1.0)) throw DomainError("confidence must lie in (0, 1)");
    if (k == n) return 1.0;
    return boost::math::ibeta_inv(static_cast<double>(k + 1), static_cast<double>(n - k), confidence);
}

SlopeFit tail_slope_fit(std::span<const double> u, const TailFitOptions& opts) {
    const auto sorted = sorted_copy(u);
    const Region region = fit_region(sorted, opts);
    if (opts.fit_points < 3 || opts.jackknife_groups < 3) throw DomainError("fit needs >= 3 points and groups");
    std::vector<double> s_points(opts.fit_points);
    for (int i = 0; i < opts.fit_points; ++i) {
        s_points[i] = region.lo + (region.hi - region.lo) * i / (opts.fit_points - 1);
    }
    SlopeFit fit;
    fit.slope = slope_on(sorted, s_points);
    fit.s_lo = region.lo;
    fit.s_hi = region.hi;
    fit.points = s_points.size();
    fit.confidence = opts.confidence;

    const int G = opts.jackknife_groups;
    std::vector<double> reps(G);
    for (int g = 0; g < G; ++g) {
        std::vector<double> kept;
        kept.reserve(u.size());
        for (std::size_t i = 0; i < u.size(); ++i) {
            if (static_cast<int>(i % G) != g) kept.push_back(u[i]);
        }
        std::sort(kept.begin(), kept.end());
        reps[g] = slope_on(kept, s_points);
    }
    const double mean = stats::compensated_mean(reps);
    stats::CompensatedSum dev;
    for (double r : reps) dev.add((r - mean) * (r - mean));
    fit.std_error = std::sqrt((G - 1.0) / G * dev.value());
    const boost::math::students_t t(G - 1.0);
    fit.upper = fit.slope + boost::math::quantile(t, opts.confidence) * fit.std_error;
    return fit;
}

transfer::TailBound weight_tail(std::span<const double> u, const TailFitOptions& opts) {
    const auto sorted = sorted_copy(u);
    const std::size_t n = sorted.size();
    if (opts.grid_points < 2) throw DomainError("tail grid needs at least two points");
    const double top = sorted.back();
    transfer::EmpiricalTail tail;
    tail.n_samples = n;
    tail.confidence = opts.confidence;
    tail.s.push_back(0.0);
    if (top > 0.0) {
        const double lo = std::log(opts.lower_fraction * top);
        const double step = (std::log(top) - lo) / (opts.grid_points - 1);
        for (int i = 0; i < opts.grid_points; ++i) tail.s.push_back(i + 1 == opts.grid_points ? top : std::exp(lo + step * i));
    }
    tail.m.resize(tail.s.size());
    for (std::size_t j = 0; j < tail.s.size(); ++j) {
        tail.m[j] = clopper_pearson_upper(exceedances(sorted, tail.s[j]), n, opts.confidence);
    }
    for (std::size_t j = tail.m.size() - 1; j-- > 0;) tail.m[j] = std::max(tail.m[j], tail.m[j + 1]);

    if (opts.extrapolate && n > opts.anchor_min_count) {
        const SlopeFit fit = tail_slope_fit(u, opts);
        if (fit.upper < 0.0) {
            std::size_t anchor = 0;
            for (std::size_t j = 0; j < tail.s.size(); ++j) {
                if (exceedances(sorted, tail.s[j]) >= opts.anchor_min_count) anchor = j;
            }
            tail.extrapolation = transfer::GaussianExtrapolation{tail.s[anchor], tail.m[anchor], -fit.upper};
        }
    }
    return transfer::TailBound(std::move(tail));
}

transfer::TailBound weight_tail(const sampling::Ensemble& ens, const geometry::HPoint& y0, const TailFitOptions& opts) {
    return weight_tail(sup_distance(ens, y0), opts);
}

}  // namespace fineq::estimators
