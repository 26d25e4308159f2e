#pragma once

#include <functional>
#include <span>

namespace fineq::stats {

/// sup |F_n - F| for the empirical distribution of `x` against `cdf`.
double ks_one_sample(std::span<const double> x, const std::function<double(double)>& cdf);

/// sup |F_n - G_m| between two empirical distributions.
double ks_two_sample(std::span<const double> a, std::span<const double> b);

/// Standard normal distribution function.
double normal_cdf(double x);

}  // namespace fineq::stats
