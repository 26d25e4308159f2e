#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fineq/estimators/cylindrical.hpp"

namespace fineq::estimators {

enum class Method { plain, jackknife };
std::string_view to_string(Method m) noexcept;

struct EstimateWithCI {
    double value = 0.0;
    double std_error = 0.0;
    std::size_t n_samples = 0;
    Method method = Method::plain;
    /// Jackknife estimate of the plug-in bias (0 for plain estimates).
    double bias = 0.0;
};

/// Sample mean with its plain standard error.
EstimateWithCI mean_of(std::span<const double> x);
/// Unbiased sample variance with jackknife standard error.
EstimateWithCI variance_of(std::span<const double> x);
/// Ent(x^2) = mean(g log(g / mean g)), g = x^2, 0 log 0 = 0; jackknife standard error.
EstimateWithCI entropy_of_square(std::span<const double> x);
/// Var(x) / mean(e) with jackknife standard error.
EstimateWithCI variance_ratio(std::span<const double> x, std::span<const double> e);
/// Ent(x^2) / mean(e) with jackknife standard error.
EstimateWithCI entropy_ratio(std::span<const double> x, std::span<const double> e);

/// F evaluated on every path.
std::vector<double> evaluate(const CylindricalFunction& F, const sampling::Ensemble& ens);
/// |grad F|_H^2 on every path.
std::vector<double> energies(const CylindricalFunction& F, const sampling::Ensemble& ens, const GreenKernel& G);

EstimateWithCI variance(const CylindricalFunction& F, const sampling::Ensemble& ens);
EstimateWithCI entropy(const CylindricalFunction& F, const sampling::Ensemble& ens);
EstimateWithCI mean_energy(const CylindricalFunction& F, const sampling::Ensemble& ens, const GreenKernel& G);

struct RayleighEntry {
    std::string name;
    EstimateWithCI ratio;
    EstimateWithCI variance;
    EstimateWithCI energy;
};

struct RayleighScan {
    /// Largest Var(F) / E|grad F|^2 over the family: an empirical lower bound
    /// on the Poincare constant.
    EstimateWithCI best_ratio;
    std::size_t best_index = 0;
    std::vector<RayleighEntry> entries;
};

RayleighScan rayleigh_scan(std::span<const CylindricalFunction> family, const sampling::Ensemble& ens,
                           const GreenKernel& G);

/// Ent(F^2) / E|grad F|^2.
EstimateWithCI lsi_ratio(const CylindricalFunction& F, const sampling::Ensemble& ens, const GreenKernel& G);

struct ExpMomentEstimate {
    EstimateWithCI estimate;
    double log_value = 0.0;
    /// Share of the sum carried by the largest term.
    double max_share = 0.0;
    /// True when one sample dominates (max_share > 0.1): the mean is not trustworthy.
    bool dominated = false;
};

/// E exp(c u^2) via log-sum-exp.
ExpMomentEstimate exp_square_moment(std::span<const double> u, double c);

}  // namespace fineq::estimators
