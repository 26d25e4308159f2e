#pragma once

#include <optional>
#include <span>

#include "fineq/transfer/dyadic.hpp"
#include "fineq/transfer/profiles.hpp"

namespace fineq::transfer {

/// b(r) = (4 a^2 r^2 + 1/e + 1) M exp(-(C/2)(r-1)^2).
double weighted_level(const WeightedLSICertificate& cert, double r);

/// Smallest integer from which b is strictly decreasing.
int weighted_first_level(const WeightedLSICertificate& cert);

struct WeakLSIOptions {
    /// Use the continuous inverse 2 r(s)^2 instead of the integer staircase.
    bool smooth = false;
    int level_cap = 100000;
};

/// Weighted log-Sobolev certificate -> weak log-Sobolev profile
/// beta(s) = 2 n(s)^2, n(s) = min{n >= n_min : b(n) <= s}.
TransferResult weighted_lsi_to_weak_lsi(const WeightedLSICertificate& cert,
                                        const WeakLSIOptions& options = {});

struct TailOptions {
    int level_cap = 10000;
};

/// Level of the cut-off at n when mu(u > s) <= m(s):
///   (4 a^2 n^2 + 1/e + 1) sqrt(m(n - 1)).
double tail_level(double a, const TailBound& tail, int n);

/// Gradient bound plus tail bound -> weak log-Sobolev staircase
/// beta(s) = 2 n(s)^2 with n(s) the first level whose tail_level is <= s.
/// Throws InfeasibleError("no weak-LSI derivable") when the tail does not decay.
TransferResult tail_to_weak_lsi(double a, const TailBound& tail, const TailOptions& options = {});

/// Smallest C with beta(s) <= C log(1/s) on (domain_lower, r0), r0 < 1, for a
/// staircase or log-rate profile: the log-rate envelope the Poincare transfer
/// accepts.
TransferResult log_rate_envelope(const BetaProfile& beta, double r0);

/// Log-rate weak log-Sobolev profile -> Poincare constant (C1+C2)/(1-C3).
/// With no params the optimiser chooses them (budget evaluations).
TransferResult weak_lsi_to_poincare(const BetaProfile& beta,
                                    std::optional<DyadicParams> params = std::nullopt,
                                    std::size_t budget = 10000);

}  // namespace fineq::transfer
