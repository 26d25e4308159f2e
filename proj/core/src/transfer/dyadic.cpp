#include "fineq/transfer/dyadic.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include "fineq/error.hpp"

namespace fineq::transfer {

DyadicParams DyadicParams::from_values(double delta0, double delta, double epsilon) {
    return DyadicParams{std::log(delta0), std::log(delta), epsilon};
}

DyadicParams DyadicParams::from_pow2(double e0, double e, double epsilon) {
    return DyadicParams{e0 * std::numbers::ln2, e * std::numbers::ln2, epsilon};
}

double DyadicParams::delta0() const { return std::exp(log_delta0); }
double DyadicParams::delta() const { return std::exp(log_delta); }

double DyadicParams::first_band_r() const {
    return epsilon * std::exp(-2.0 * (log_delta0 + log_delta));
}

double DyadicParams::schedule_r(int n) const {
    const double An = A() + n;
    return std::exp(-2.0 * log_delta0 - (2.0 * n + 2.0) * log_delta) / (An * An);
}

std::optional<std::string> violated_constraint(const DyadicParams& p, double r0) {
    if (!std::isfinite(p.log_delta0) || !std::isfinite(p.log_delta) || !std::isfinite(p.epsilon)) {
        return "finite parameters";
    }
    if (!(p.log_delta > 0.0)) return "delta > 1";
    if (!(p.log_delta0 > 0.0)) return "delta0 > 1";
    if (!(p.epsilon > 0.0 && p.epsilon < 1.0)) return "0 < epsilon < 1";
    if (!(p.A() > 1.0)) return "A = log(delta0)/log(delta) > 1";
    if (!(p.first_band_r() < r0)) return "epsilon/(delta0^2 delta^2) < r0";
    // r_n is decreasing in n, so r_0 bounds the whole schedule.
    if (!(p.schedule_r(0) < r0)) return "sup_n r_n < r0";
    if (!(c3(p) < 1.0)) return "C3 < 1";
    return std::nullopt;
}

void require_feasible(const DyadicParams& p, double r0) {
    if (auto v = violated_constraint(p, r0)) {
        throw InfeasibleError(*v, "infeasible dyadic parameters: " + *v + " violated");
    }
}

double c1(const DyadicParams& p, double C) {
    const double d = p.delta();
    const double A = p.A();
    const double shape = d * d * (d + 1.0) / (d - 1.0) *
                         (1.0 + 1.0 / A + std::log(A) / (A * p.log_delta));
    return C * shape;
}

double c2(const DyadicParams& p, double C) {
    // log(delta0^2 delta^2 / epsilon)
    const double L = 2.0 * p.log_delta0 + 2.0 * p.log_delta - std::log(p.epsilon);
    return C * (L / std::numbers::ln2);
}

double c2(const DyadicParams&, double C, double r) {
    return C * (std::log(1.0 / r) / std::numbers::ln2);
}

double c3(const DyadicParams& p) {
    const double d = p.delta();
    const double A = p.A();
    return (d * d - 1.0) / (4.0 * p.log_delta) / ((A - 1.0) * (A - 1.0)) +
           p.epsilon / std::numbers::ln2;
}

double poincare_objective(const DyadicParams& p, double C, double r0) {
    if (violated_constraint(p, r0)) return std::numeric_limits<double>::infinity();
    return (c1(p, C) + c2(p, C)) / (1.0 - c3(p));
}

namespace {

// Search coordinates: x = log(delta - 1), y = log(delta0), z = log(epsilon).
struct Point {
    double x, y, z;
};

constexpr double kXLo = -6.907755278982137;  // log(1e-3)
constexpr double kXHi = 1.0986122886681098;  // log(3): delta <= 4
constexpr double kYHi = 20.0 * std::numbers::ln2;
constexpr double kZLo = -13.815510557964274;  // log(1e-6)
constexpr double kZHi = -1.0005003335835335e-3;  // log(0.999)

DyadicParams to_params(const Point& q) {
    return DyadicParams{q.y, std::log1p(std::exp(q.x)), std::exp(q.z)};
}

Point clamp(Point q) {
    q.x = std::clamp(q.x, kXLo, kXHi);
    const double y_lo = std::log1p(std::exp(q.x));
    q.y = std::clamp(q.y, y_lo, kYHi);
    q.z = std::clamp(q.z, kZLo, kZHi);
    return q;
}

}  // namespace

OptimizeOutcome optimize_dyadic_params(double C, double r0, std::size_t budget) {
    if (!(C > 0.0) || !(r0 > 0.0)) throw DomainError("optimizer needs C > 0 and r0 > 0");
    if (budget < 64) throw DomainError("optimizer budget must be at least 64 evaluations");

    std::size_t evals = 0;
    auto objective = [&](const Point& q) {
        ++evals;
        return poincare_objective(to_params(q), 1.0, r0);
    };

    const int per_axis = std::max(4, static_cast<int>(std::cbrt(static_cast<double>(budget) / 2.0)));
    const double dx = (kXHi - kXLo) / (per_axis - 1);
    const double dz = (kZHi - kZLo) / (per_axis - 1);

    Point best{0.0, 0.0, 0.0};
    double best_val = std::numeric_limits<double>::infinity();
    double best_dy = 0.0;
    for (int i = 0; i < per_axis; ++i) {
        const double x = kXLo + dx * i;
        const double y_lo = std::log1p(std::exp(x));
        const double dy = (kYHi - y_lo) / per_axis;
        for (int j = 1; j <= per_axis; ++j) {
            const double y = y_lo + dy * j;
            for (int k = 0; k < per_axis; ++k) {
                const Point q{x, y, kZLo + dz * k};
                const double v = objective(q);
                if (v < best_val) {
                    best_val = v;
                    best = q;
                    best_dy = dy;
                }
            }
        }
    }
    if (!std::isfinite(best_val)) {
        throw InfeasibleError("feasible region", "no feasible dyadic parameters in the search box");
    }

    std::array<double, 3> step{dx, best_dy, dz};
    while (evals + 6 <= budget) {
        bool improved = false;
        for (int axis = 0; axis < 3 && evals + 2 <= budget; ++axis) {
            for (double sign : {1.0, -1.0}) {
                Point q = best;
                (axis == 0 ? q.x : axis == 1 ? q.y : q.z) += sign * step[static_cast<std::size_t>(axis)];
                q = clamp(q);
                const double v = objective(q);
                if (v < best_val) {
                    best_val = v;
                    best = q;
                    improved = true;
                    break;
                }
            }
        }
        if (!improved) {
            for (double& s : step) s *= 0.5;
            if (step[0] < 1e-12 && step[1] < 1e-12 && step[2] < 1e-12) break;
        }
    }

    const DyadicParams params = to_params(best);
    return OptimizeOutcome{params, poincare_objective(params, C, r0), evals};
}

}  // namespace fineq::transfer
