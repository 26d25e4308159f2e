#include "fineq/estimators/green_kernel.hpp"

#include <algorithm>
#include <string>

#include "fineq/error.hpp"

namespace fineq::estimators {

std::string_view to_string(KernelKind k) noexcept {
    switch (k) {
        case KernelKind::based_path: return "based_path";
        case KernelKind::bridge: return "bridge";
        default: return "pointwise";
    }
}

KernelKind kernel_kind_from(std::string_view name) {
    for (auto k : {KernelKind::based_path, KernelKind::bridge, KernelKind::pointwise}) {
        if (to_string(k) == name) return k;
    }
    throw DataError("unknown kernel '" + std::string(name) + "'");
}

double GreenKernel::operator()(double s, double t) const {
    switch (kind) {
        case KernelKind::based_path: return std::min(s, t);
        case KernelKind::bridge: return std::min(s, t) - s * t / T;
        default: return 1.0;
    }
}

Eigen::MatrixXd GreenKernel::gram(std::span<const double> times) const {
    const auto k = static_cast<Eigen::Index>(times.size());
    Eigen::MatrixXd G(k, k);
    for (Eigen::Index i = 0; i < k; ++i)
        for (Eigen::Index j = 0; j < k; ++j) G(i, j) = (*this)(times[i], times[j]);
    return G;
}

GreenKernel GreenKernel::for_measure(sampling::MeasureTag tag, double T) {
    using sampling::MeasureTag;
    switch (tag) {
        case MeasureTag::wiener: return {KernelKind::based_path, T};
        case MeasureTag::flat_bridge:
        case MeasureTag::hyperbolic_bridge: return {KernelKind::bridge, T};
        default: return {KernelKind::pointwise, T};
    }
}

void GreenKernel::require_compatible(sampling::MeasureTag tag) const {
    if (for_measure(tag, T).kind != kind) {
        throw DomainError("kernel '" + std::string(to_string(kind)) + "' does not match measure '" +
                          std::string(sampling::to_string(tag)) + "'");
    }
}

}  // namespace fineq::estimators
