#include "fineq/transfer/weak_poincare.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "fineq/error.hpp"

namespace fineq::transfer {

namespace {

constexpr double kLn2 = std::numbers::ln2;

double kappa_of(double delta) {
    const double ld = std::log(delta);
    return delta * delta * (delta + 1.0) / (2.0 * (delta - 1.0) * ld);
}

double q_of(const WeakPoincareParams& p, double A, double kappa) {
    const double d1 = p.delta0 * p.delta;
    return p.r * d1 * d1 / kLn2 +
           kappa * p.delta0 * p.delta0 * (p.delta - 1.0) * (p.delta - 1.0) / (A - 1.0);
}

double c1_prime_of(double delta, double Q, double kappa) {
    return (1.0 - Q) / (4.0 * kappa * std::log(delta));
}

}  // namespace

WeakPoincareConstruction::WeakPoincareConstruction(BetaProfile beta, WeakPoincareParams params)
    : beta_(std::move(beta)), params_(params) {
    const double r0 = beta_.r0();
    if (!(params_.delta > 1.0) || !std::isfinite(params_.delta)) {
        throw InfeasibleError("delta > 1", "weak-Poincare construction needs delta > 1");
    }
    if (!(params_.delta0 > params_.delta) || !std::isfinite(params_.delta0)) {
        throw InfeasibleError("delta0 > delta", "weak-Poincare construction needs delta0 > delta");
    }
    if (!(params_.r > 0.0 && params_.r < r0)) {
        throw InfeasibleError("0 < r < r0", "first-band truncation r must lie in (0, r0)");
    }
    const double ld = std::log(params_.delta);
    A_ = std::log(params_.delta0) / ld;
    if (!(1.0 / A_ < r0)) throw InfeasibleError("1/A < r0", "first schedule value 1/A must lie below r0");
    kappa_ = kappa_of(params_.delta);
    Q_ = q_of(params_, A_, kappa_);
    if (!(Q_ < 1.0)) throw InfeasibleError("Q < 1", "weak-Poincare construction needs Q < 1");

    const double d4 = std::pow(params_.delta, -4.0);
    W_ = 4.0 * (kappa_ + d4 / (params_.delta0 * params_.delta0)) / (1.0 - Q_);
    c1p_ = c1_prime_of(params_.delta, Q_, kappa_);
    c2p_ = 1.0 / (4.0 * std::pow(params_.delta, 4.0) * W_ * ld);

    auto admissible = [&](double s) {
        if (!(s > 0.0) || s > W_ * d4 || !(s < 1.0 / std::numbers::e)) return false;
        const double L = std::log(1.0 / s);
        if (!(c2p_ * s * L < r0)) return false;
        const double u = (std::log(W_ / s) / (4.0 * ld) + 1.0) * s / W_;
        return u < r0;
    };
    double hi = std::min(W_ * d4, std::nextafter(1.0 / std::numbers::e, 0.0));
    if (admissible(hi)) {
        r1_ = hi;
    } else {
        double lo = hi;
        for (int i = 0; i < 2000 && !admissible(lo); ++i) lo *= 0.5;
        if (!admissible(lo)) throw InfeasibleError("r1 > 0", "no admissible s for the weak-Poincare bound");
        for (int i = 0; i < 200; ++i) {
            const double mid = std::sqrt(lo * hi);
            if (mid <= lo || mid >= hi) break;
            (admissible(mid) ? lo : hi) = mid;
        }
        r1_ = lo;
    }
}

WeakPoincareParams WeakPoincareConstruction::choose_params(double r0) {
    if (!(r0 > 0.0)) throw DomainError("r0 must be positive");
    WeakPoincareParams best{};
    double best_c1 = -std::numeric_limits<double>::infinity();
    constexpr int kH = 81;
    constexpr int kA = 81;
    const double A_lo = std::max(1.0, 1.0 / r0) * (1.0 + 1e-3);
    for (int i = 0; i < kH; ++i) {
        const double h = std::pow(10.0, -4.0 + 4.0 * i / (kH - 1));
        const double delta = 1.0 + h;
        const double ld = std::log1p(h);
        for (int j = 0; j < kA; ++j) {
            const double A = A_lo * std::pow(10.0, 6.0 * j / (kA - 1));
            const double log_d0 = A * ld;
            if (log_d0 > 40.0) break;
            WeakPoincareParams p{std::exp(log_d0), delta, 0.0};
            const double d1 = p.delta0 * delta;
            p.r = std::min(0.5 * r0, 0.01 * kLn2 / (d1 * d1));
            const double kappa = kappa_of(delta);
            const double Q = q_of(p, A, kappa);
            if (!(Q < 1.0)) continue;
            const double c1p = c1_prime_of(delta, Q, kappa);
            if (c1p > best_c1) {
                best_c1 = c1p;
                best = p;
            }
        }
    }
    if (!(best_c1 > 0.0)) throw InfeasibleError("Q < 1", "no weak-Poincare parameters found");
    return best;
}

int WeakPoincareConstruction::bands_for(double s) const {
    if (!(s > 0.0 && s <= r1_)) throw DomainError("s outside (0, r1)");
    const double n = std::ceil(std::log(W_ / s) / (4.0 * std::log(params_.delta)));
    return std::max(1, static_cast<int>(n));
}

double WeakPoincareConstruction::displayed_alpha(double s) const {
    if (!(s > 0.0 && s <= r1_)) throw DomainError("s outside (0, r1)");
    const double L = std::log(1.0 / s);
    return beta_(c2p_ * s * L) / (c1p_ * L);
}

double WeakPoincareConstruction::constructive_alpha(double s) const {
    const int N = bands_for(s);
    const double ld = std::log(params_.delta);
    double G = beta_(params_.r) / kLn2 + kappa_ * beta_(1.0 / A_) / A_;
    for (int k = 1; k <= N; ++k) {
        const double rk = std::exp(-2.0 * k * ld) / (k + A_);
        G = std::max(G, kappa_ * beta_(rk) / (k + A_));
    }
    const double tail_r = N * std::exp(-4.0 * N * ld);
    G = std::max(G, kappa_ * beta_(tail_r) / (N + 1 + A_));
    return G / (1.0 - Q_);
}

TransferResult weak_lsi_to_weak_poincare(const BetaProfile& beta, const WeakPoincareOptions& options) {
    if (options.grid_points < 2 || !(options.grid_decades > 0.0)) {
        throw DomainError("weak-Poincare grid needs at least two points and a positive span");
    }
    const WeakPoincareParams params =
        options.params ? *options.params : WeakPoincareConstruction::choose_params(beta.r0());
    const WeakPoincareConstruction wp(beta, params);

    const int n = options.grid_points;
    Tabulated table;
    table.s.reserve(n);
    table.value.reserve(n);
    int displayed_wins = 0;
    std::vector<std::pair<double, int>> sampled_bands;
    for (int j = 0; j < n; ++j) {
        const double s = wp.r1() * std::pow(10.0, -options.grid_decades * (1.0 - double(j) / n));
        double displayed = 0.0;
        double constructive = 0.0;
        try {
            displayed = wp.displayed_alpha(s);
            constructive = wp.constructive_alpha(s);
        } catch (const DomainError&) {
            if (table.s.empty()) continue;
            throw;
        }
        if (displayed >= constructive) ++displayed_wins;
        const double v = std::max(displayed, constructive);
        table.s.push_back(s);
        table.value.push_back(table.value.empty() ? v : std::min(v, table.value.back()));
        if (j % 100 == 0 || j + 1 == n) sampled_bands.emplace_back(s, wp.bands_for(s));
    }
    if (table.s.empty()) {
        throw InfeasibleError("beta domain", "weak-LSI profile is not defined at the arguments required below r1");
    }

    Audit audit{{"r0", beta.r0()},
                {"delta", params.delta},
                {"delta0", params.delta0},
                {"r", params.r},
                {"A", wp.A()},
                {"kappa", wp.kappa()},
                {"Q", wp.Q()},
                {"W", wp.W()},
                {"C1_prime", wp.c1_prime()},
                {"C2_prime", wp.c2_prime()},
                {"r1", wp.r1()},
                {"grid_points", static_cast<double>(table.s.size())},
                {"grid_lower", table.s.front()},
                {"displayed_dominates", displayed_wins == static_cast<int>(table.s.size()) ? 1.0 : 0.0},
                {"displayed_dominates_count", static_cast<double>(displayed_wins)}};
    for (const auto& [s, N] : sampled_bands) {
        audit.push_back({"s", s});
        audit.push_back({"N(s)", static_cast<double>(N)});
    }
    return TransferResult{TransferKind::weak_poincare, AlphaProfile(std::move(table), wp.r1()), std::move(audit)};
}

}  // namespace fineq::transfer
