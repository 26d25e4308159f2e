#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace fineq::transfer {

/// Free parameters of the dyadic level construction delta_n = delta0 * delta^n.
///
/// The logarithms are the stored coordinates so that powers of two given
/// through `from_pow2` keep A = log(delta0)/log(delta) exact.
struct DyadicParams {
    double log_delta0;
    double log_delta;
    double epsilon;

    static DyadicParams from_values(double delta0, double delta, double epsilon);
    /// delta0 = 2^e0, delta = 2^e.
    static DyadicParams from_pow2(double e0, double e, double epsilon);

    double delta0() const;
    double delta() const;
    double A() const { return log_delta0 / log_delta; }
    /// Truncation level used for the first band: epsilon / (delta0^2 delta^2).
    double first_band_r() const;
    /// r_n = 1 / (delta0^2 delta^(2n+2) (A + n)^2).
    double schedule_r(int n) const;

    bool operator==(const DyadicParams&) const = default;
};

/// First violated feasibility condition for a log-rate profile whose
/// domain ends at r0, or nullopt when the parameters are feasible.
std::optional<std::string> violated_constraint(const DyadicParams& p, double r0);

/// Throws InfeasibleError naming the violated condition.
void require_feasible(const DyadicParams& p, double r0);

/// C1 = C delta^2 (delta+1)/(delta-1) (1 + 1/A + log(A)/(A log delta)).
double c1(const DyadicParams& p, double C);
/// C2 = C log(delta0^2 delta^2 / epsilon) / log 2.
double c2(const DyadicParams& p, double C);
/// C2 evaluated at an explicit first-band truncation r: C log(1/r) / log 2.
double c2(const DyadicParams& p, double C, double r);
/// C3 = (delta^2 - 1)/(4 log delta) / (A - 1)^2 + epsilon / log 2.
double c3(const DyadicParams& p);

/// (C1 + C2) / (1 - C3); +inf when infeasible for r0.
double poincare_objective(const DyadicParams& p, double C, double r0);

struct OptimizeOutcome {
    DyadicParams params;
    double objective;          // evaluated at the requested C
    std::size_t evaluations;
};

/// Deterministic coarse log-grid followed by coordinate descent over
/// delta in (1, 4], delta0 in (delta, 2^20], epsilon in (0, 1).
/// The search runs on the C-normalised objective, so the minimiser does
/// not depend on C. Throws InfeasibleError if no grid point is feasible.
OptimizeOutcome optimize_dyadic_params(double C, double r0, std::size_t budget);

}  // namespace fineq::transfer
