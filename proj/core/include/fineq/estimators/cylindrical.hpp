#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fineq/estimators/green_kernel.hpp"
#include "fineq/sampling/ensemble.hpp"

namespace fineq::estimators {

/// F(sigma) = f(sigma_{t_1}, ..., sigma_{t_k}).
///
/// The kernel sees the k states concatenated (k * state_dim numbers; ambient
/// coordinates on the hyperboloid). The optional analytic gradient fills the
/// Euclidean partials in the same layout; without it partials come from
/// central differences (along exp-map geodesics on the hyperboloid).
class CylindricalFunction {
public:
    using Kernel = std::function<double(std::span<const double>)>;
    using Gradient = std::function<void(std::span<const double>, std::span<double>)>;

    CylindricalFunction(std::vector<double> times, int state_dim, Kernel f, Gradient grad = {},
                        std::string name = {});

    const std::vector<double>& times() const noexcept { return times_; }
    int state_dim() const noexcept { return state_dim_; }
    const std::string& name() const noexcept { return name_; }
    bool has_analytic_gradient() const noexcept { return static_cast<bool>(grad_); }
    /// Copy that differentiates by central differences.
    CylindricalFunction without_gradient() const;

    std::optional<double> sup_bound;
    /// Relative step of the central differences.
    double fd_step = 1e-5;

    std::vector<double> gather(const sampling::PathView& path) const;
    double operator()(const sampling::PathView& path) const;

    /// Gradient components v_i as k blocks of state_dim numbers: Euclidean
    /// partials on flat paths, tangent vectors at sigma_{t_i} on the hyperboloid.
    std::vector<double> partials(const sampling::PathView& path, bool hyperbolic) const;

private:
    std::vector<double> times_;
    int state_dim_;
    Kernel f_;
    Gradient grad_;
    std::string name_;
};

/// x_c(t).
CylindricalFunction coordinate_function(double t, int c, int state_dim);

/// How tangent vectors at different times are paired.
enum class Pairing {
    automatic,
    /// Transport every component back to the start along the discrete path,
    /// with the identity as transport on flat paths.
    transported,
};

/// |grad F|_H^2 = sum_ij G(t_i, t_j) <v_i, v_j>.
double h_gradient_energy(const CylindricalFunction& F, const sampling::PathView& path, sampling::MeasureTag tag,
                         const GreenKernel& G, Pairing pairing = Pairing::automatic);

}  // namespace fineq::estimators
