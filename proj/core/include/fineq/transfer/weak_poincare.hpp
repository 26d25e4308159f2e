#pragma once

#include <vector>

#include "fineq/transfer/profiles.hpp"

namespace fineq::transfer {

/// Levels delta_n = delta0 delta^n and the first-band truncation r used by
/// the weak-Poincare construction.
struct WeakPoincareParams {
    double delta0;
    double delta;
    double r;
    bool operator==(const WeakPoincareParams&) const = default;
};

/// The constants of the cut-off construction for one choice of parameters.
///
/// With kappa = delta^2 (delta+1) / (2 (delta-1) log delta) and A = log delta0 / log delta,
/// every g >= 0 with E g^2 = 1 and mu(g != 0) <= 1/2 satisfies
///   1 <= G_N E|grad g|^2 + Q + S_N |g|_inf^2,
/// where Q = r delta1^2 / log 2 + kappa delta0^2 (delta-1)^2 / (A-1) and
/// S_N = kappa delta^-4N + delta0^-2 delta^-(4N+4). Band schedules:
/// r_k = 1/(delta^2k (k+A)) for k <= N and N/delta^4N for N < k <= 2N.
class WeakPoincareConstruction {
public:
    WeakPoincareConstruction(BetaProfile beta, WeakPoincareParams params);

    /// Parameters maximising C1' subject to feasibility for a profile on (0, r0).
    static WeakPoincareParams choose_params(double r0);

    const BetaProfile& beta() const noexcept { return beta_; }
    const WeakPoincareParams& params() const noexcept { return params_; }
    double A() const noexcept { return A_; }
    double kappa() const noexcept { return kappa_; }
    double Q() const noexcept { return Q_; }
    double W() const noexcept { return W_; }
    double c1_prime() const noexcept { return c1p_; }
    double c2_prime() const noexcept { return c2p_; }
    double r1() const noexcept { return r1_; }

    /// Number of first-schedule bands needed to push the sup-norm term below s.
    int bands_for(double s) const;
    /// beta(C2' s log(1/s)) / (C1' log(1/s)).
    double displayed_alpha(double s) const;
    /// G_N / (1 - Q) with N = bands_for(s), every band kept.
    double constructive_alpha(double s) const;

private:
    BetaProfile beta_;
    WeakPoincareParams params_;
    double A_ = 0.0;
    double kappa_ = 0.0;
    double Q_ = 0.0;
    double W_ = 0.0;
    double c1p_ = 0.0;
    double c2p_ = 0.0;
    double r1_ = 0.0;
};

struct WeakPoincareOptions {
    std::optional<WeakPoincareParams> params;
    int grid_points = 1000;
    double grid_decades = 12.0;
};

/// Weak log-Sobolev profile -> tabulated weak Poincare profile on a log grid
/// below r1. Each grid value is max(displayed, constructive); the table is
/// then replaced by its running minimum from small s, which keeps it valid
/// and non-increasing.
TransferResult weak_lsi_to_weak_poincare(const BetaProfile& beta,
                                         const WeakPoincareOptions& options = {});

}  // namespace fineq::transfer
