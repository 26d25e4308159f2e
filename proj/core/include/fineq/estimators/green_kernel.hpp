#pragma once

#include <Eigen/Core>
#include <span>
#include <string_view>

#include "fineq/sampling/ensemble.hpp"

namespace fineq::estimators {

/// Reproducing kernel of the tangent (Cameron-Martin) space used to pair
/// gradient components at the evaluation times.
///   based_path: s ^ t          (paths pinned at 0)
///   bridge:     s ^ t - s t/T  (pinned at 0 and T)
///   pointwise:  1              (a single Gaussian vector, no time structure)
enum class KernelKind { based_path, bridge, pointwise };

std::string_view to_string(KernelKind k) noexcept;
KernelKind kernel_kind_from(std::string_view name);

struct GreenKernel {
    KernelKind kind = KernelKind::bridge;
    double T = 1.0;

    double operator()(double s, double t) const;
    Eigen::MatrixXd gram(std::span<const double> times) const;

    /// Kernel paired with the measure the ensemble was drawn from.
    static GreenKernel for_measure(sampling::MeasureTag tag, double T);
    /// Throws DomainError unless this kernel is the one for `tag`.
    void require_compatible(sampling::MeasureTag tag) const;
};

}  // namespace fineq::estimators
