#pragma once

#include "fineq/geometry/hyperbolic.hpp"

namespace fineq::geometry {

/// Which operator the kernel is the fundamental solution for.
enum class Generator { half_laplacian, laplacian };

struct HeatKernelParams {
    int n = 3;
    Generator generator = Generator::half_laplacian;
};

/// Radial heat kernel p_t(r) on H^n, n in {2, 3}.
///
/// n = 3 is closed form. n = 2 evaluates the Mehler-type integral
///   sqrt(2) (2 pi t)^{-3/2} e^{-t/8} int_r^inf s e^{-s^2/2t} / sqrt(cosh s - cosh r) ds
/// (half-Laplacian time) by double-exponential quadrature.
double heat_kernel(double t, double r, const HeatKernelParams& p = {});
double log_heat_kernel(double t, double r, const HeatKernelParams& p = {});
/// d/dr log p_t(r).
double dlog_heat_kernel_dr(double t, double r, const HeatKernelParams& p = {});
/// -(d/dr log p_t(r)) / r, finite at r = 0.
double radial_drift_factor(double t, double r, const HeatKernelParams& p = {});

/// grad_x log p_t(x, y0) as a tangent vector at x.
Ambient grad_log_heat_kernel(double t, const HPoint& x, const HPoint& y0, const HeatKernelParams& p = {});

/// (sinh r / r)^{n-1}.
double ruse_factor(int n, double r);

/// Surface area of the unit sphere in R^n (2 pi for n = 2, 4 pi for n = 3).
double unit_sphere_area(int n);

/// Constant C with |grad log p_t| <= C (r/t + 1/sqrt t) for 0 < t <= T (half-Laplacian).
double gradient_bound_constant(int n, double T);

}  // namespace fineq::geometry
