#include "fineq/geometry/heat_kernel.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <cmath>
#include <numbers>

#include "fineq/error.hpp"

namespace fineq::geometry {

namespace {

constexpr double kPi = std::numbers::pi;

void check(double t, double r, const HeatKernelParams& p) {
    if (p.n != 2 && p.n != 3) throw DomainError("heat kernel implemented for n = 2 and n = 3 only");
    if (!(t > 0.0) || !std::isfinite(t)) throw DomainError("heat kernel needs t > 0");
    if (!(r >= 0.0) || !std::isfinite(r)) throw DomainError("heat kernel needs a finite distance r >= 0");
}

// Half-Laplacian time: the kernel of Delta at time t is that of Delta/2 at 2t.
double half_time(double t, const HeatKernelParams& p) {
    return p.generator == Generator::laplacian ? 2.0 * t : t;
}

double r_over_sinh(double r) {
    if (r < 1e-8) return 1.0 - r * r / 6.0;
    if (r > 20.0) return std::isinf(r) ? 0.0 : 2.0 * r * std::exp(-r);
    return r / std::sinh(r);
}

// coth r - 1/r
double coth_minus_inv(double r) {
    if (r < 1e-3) {
        const double r2 = r * r;
        return r * (1.0 / 3.0 - r2 / 45.0 + 2.0 * r2 * r2 / 945.0);
    }
    return 1.0 / std::tanh(r) - 1.0 / r;
}

// (sinh s - s cosh s) / sinh^3 s
double q_of(double s) {
    if (s < 1e-2) {
        const double s2 = s * s;
        return -1.0 / 3.0 + (2.0 / 15.0) * s2 - (17.0 / 315.0) * s2 * s2;
    }
    if (s > 300.0) return 0.0;
    const double sh = std::sinh(s);
    return (sh - s * std::cosh(s)) / (sh * sh * sh);
}

// s(w) = acosh(cosh r + w^2), written to keep precision for small r and w.
double s_of(double r, double w) {
    // cosh r + w^2 - 1 = 2 sinh^2(r/2) + w^2
    const double sh = std::sinh(0.5 * r);
    const double u = 2.0 * sh * sh + w * w;
    return std::log1p(u + std::sqrt(u * (u + 2.0)));
}

struct H2Integrals {
    double I;   // 2 int F(s(w)) dw, scaled by exp(r^2/2t)
    double J;   // 2 int F'(s)/sinh s dw
};

H2Integrals h2_integrals(double t, double r) {
    boost::math::quadrature::exp_sinh<double> quad;
    // Both integrands carry exp(-r^2/2t) as a common factor, removed here.
    auto gauss = [&](double s) { return std::exp(-(s - r) * (s + r) / (2.0 * t)); };
    auto F = [&](double w) {
        const double s = s_of(r, w);
        return 2.0 * r_over_sinh(s) * gauss(s);
    };
    auto dF = [&](double w) {
        const double s = s_of(r, w);
        const double ros = r_over_sinh(s);
        return 2.0 * gauss(s) * (q_of(s) - ros * ros / t);
    };
    const double I = quad.integrate(F, 0.0, std::numeric_limits<double>::infinity(), 1e-13);
    const double J = quad.integrate(dF, 0.0, std::numeric_limits<double>::infinity(), 1e-13);
    return {I, J};
}

double h2_prefactor_log(double t) {
    return 0.5 * std::log(2.0) - 1.5 * std::log(2.0 * kPi * t) - t / 8.0;
}

}  // namespace

double log_heat_kernel(double t, double r, const HeatKernelParams& p) {
    check(t, r, p);
    const double tt = half_time(t, p);
    if (p.n == 3) {
        return -1.5 * std::log(2.0 * kPi * tt) + std::log(r_over_sinh(r)) - tt / 2.0 - r * r / (2.0 * tt);
    }
    return h2_prefactor_log(tt) + std::log(h2_integrals(tt, r).I) - r * r / (2.0 * tt);
}

double heat_kernel(double t, double r, const HeatKernelParams& p) { return std::exp(log_heat_kernel(t, r, p)); }

double radial_drift_factor(double t, double r, const HeatKernelParams& p) {
    check(t, r, p);
    const double tt = half_time(t, p);
    if (p.n == 3) {
        return (r < 1e-8 ? 1.0 / 3.0 : coth_minus_inv(r) / r) + 1.0 / tt;
    }
    const auto [I, J] = h2_integrals(tt, r);
    // d/dr I = sinh r * J
    const double sinh_over_r = r < 1e-8 ? 1.0 : std::sinh(r) / r;
    return -sinh_over_r * J / I;
}

double dlog_heat_kernel_dr(double t, double r, const HeatKernelParams& p) {
    return -r * radial_drift_factor(t, r, p);
}

Ambient grad_log_heat_kernel(double t, const HPoint& x, const HPoint& y0, const HeatKernelParams& p) {
    if (x.dim() != p.n || y0.dim() != p.n) throw DomainError("point dimension differs from kernel dimension");
    const Ambient l = log_map(x, y0);
    const double r = tangent_norm(l);
    return radial_drift_factor(t, r, p) * l;
}

double ruse_factor(int n, double r) {
    if (n < 1) throw DomainError("dimension must be positive");
    return std::pow(1.0 / r_over_sinh(std::abs(r)), n - 1);
}

double unit_sphere_area(int n) {
    if (n == 2) return 2.0 * kPi;
    if (n == 3) return 4.0 * kPi;
    throw DomainError("unit sphere area implemented for n = 2, 3");
}

double gradient_bound_constant(int n, double T) {
    if (n != 2 && n != 3) throw DomainError("bound implemented for n = 2, 3");
    if (!(T > 0.0)) throw DomainError("horizon must be positive");
    // |d_r log p| <= r/t + (n-1)/2 for the hyperbolic kernels; (n-1)/2 <= 1 <= sqrt(T/t).
    return std::max(1.0, std::sqrt(T));
}

}  // namespace fineq::geometry
