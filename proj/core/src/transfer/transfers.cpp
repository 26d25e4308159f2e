#include "fineq/transfer/transfers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "fineq/error.hpp"

namespace fineq::transfer {

namespace {

constexpr double kLevelOffset = 1.0 / std::numbers::e + 1.0;

std::string indexed(std::string_view stem, int n) {
    return std::string(stem) + "(" + std::to_string(n) + ")";
}

}  // namespace

double weighted_level(const WeightedLSICertificate& cert, double r) {
    const double a2 = cert.a * cert.a;
    return (4.0 * a2 * r * r + kLevelOffset) * cert.M *
           std::exp(-0.5 * cert.C_exp * (r - 1.0) * (r - 1.0));
}

int weighted_first_level(const WeightedLSICertificate& cert) {
    // d/dr log b < 2/r - C(r-1) < 0 once C r (r-1) >= 2.
    const double r_star = 0.5 * (1.0 + std::sqrt(1.0 + 8.0 / cert.C_exp));
    return std::max(1, static_cast<int>(std::ceil(r_star)));
}

TransferResult weighted_lsi_to_weak_lsi(const WeightedLSICertificate& cert,
                                        const WeakLSIOptions& options) {
    cert.validate();
    const int n_min = weighted_first_level(cert);
    const double r0 = weighted_level(cert, n_min);

    Audit audit{{"a", cert.a}, {"C", cert.C_exp}, {"M", cert.M},
                {"n_min", static_cast<double>(n_min)}, {"r0", r0}};

    if (options.smooth) {
        audit.push_back({"smooth", 1.0});
        return TransferResult{TransferKind::weak_lsi,
                              BetaProfile(SmoothWeighted{cert.a, cert.C_exp, cert.M, static_cast<double>(n_min)}, r0),
                              std::move(audit)};
    }

    Staircase stairs;
    for (int n = n_min; n <= options.level_cap; ++n) {
        const double b = weighted_level(cert, n);
        if (!(b >= std::numeric_limits<double>::min())) break;
        stairs.levels.push_back(n);
        stairs.thresholds.push_back(b);
        audit.push_back({indexed("b", n), b});
    }
    if (stairs.levels.empty()) {
        throw InfeasibleError("b(n_min) > 0", "weighted certificate has no representable level");
    }
    return TransferResult{TransferKind::weak_lsi, BetaProfile(std::move(stairs), r0), std::move(audit)};
}

double tail_level(double a, const TailBound& tail, int n) {
    const double nn = static_cast<double>(n);
    return (4.0 * a * a * nn * nn + kLevelOffset) * std::sqrt(tail(nn - 1.0));
}

TransferResult tail_to_weak_lsi(double a, const TailBound& tail, const TailOptions& options) {
    if (!(a > 0.0) || !std::isfinite(a)) throw DomainError("gradient bound a must be positive");

    // sqrt(m(s)) s^2 must tend to zero: sample it on s = 1, 2, 4, ..., 1024.
    auto decay = [&](double s) { return std::sqrt(tail(s)) * s * s; };
    const double g_first = decay(1.0);
    const double g_last = decay(1024.0);
    if (!(g_last <= g_first) || !(g_last < 1e-3)) {
        throw InfeasibleError("tail decay",
                              "no weak-LSI derivable: tail bound does not decay faster than s^-4");
    }

    Audit audit{{"a", a}};
    Staircase stairs;
    double record = std::numeric_limits<double>::infinity();
    int probed = 0;
    for (int n = 1; n <= options.level_cap; ++n) {
        const double lvl = tail_level(a, tail, n);
        ++probed;
        audit.push_back({indexed("level", n), lvl});
        if (lvl < record) {
            record = lvl;
            if (!(lvl >= std::numeric_limits<double>::min())) break;
            stairs.levels.push_back(n);
            stairs.thresholds.push_back(lvl);
        }
    }
    if (stairs.levels.empty()) {
        throw InfeasibleError("tail decay", "no weak-LSI derivable: no level below the cap");
    }
    audit.push_back({"levels_probed", static_cast<double>(probed)});
    audit.push_back({"smallest_level", stairs.thresholds.back()});
    const double r0 = stairs.thresholds.front();
    audit.insert(audit.begin() + 1, AuditEntry{"r0", r0});
    return TransferResult{TransferKind::weak_lsi, BetaProfile(std::move(stairs), r0), std::move(audit)};
}

TransferResult log_rate_envelope(const BetaProfile& beta, double r0) {
    if (!(r0 > 0.0 && r0 < 1.0)) throw DomainError("envelope needs 0 < r0 < 1");
    if (const auto* rate = std::get_if<LogRate>(&beta.family()); rate && rate->power == 1.0) {
        if (r0 > beta.r0()) throw DomainError("envelope r0 beyond the profile's domain");
        return TransferResult{TransferKind::weak_lsi, BetaProfile(*rate, r0), Audit{{"C", rate->C}, {"r0", r0}}};
    }
    const auto* st = std::get_if<Staircase>(&beta.family());
    if (st == nullptr) throw DomainError("log-rate envelope needs a staircase or log-rate profile");
    // On [thresholds[j], thresholds[j-1]) the profile is coefficient * levels[j]^2,
    // largest relative to log(1/s) at the right end of the step.
    double C = 0.0;
    for (std::size_t j = 0; j < st->levels.size(); ++j) {
        const double left = st->thresholds[j];
        if (left >= r0) continue;
        const double right = j == 0 ? r0 : std::min(r0, st->thresholds[j - 1]);
        const double lv = static_cast<double>(st->levels[j]);
        C = std::max(C, st->coefficient * lv * lv / std::log(1.0 / right));
    }
    if (!(C > 0.0)) throw InfeasibleError("r0 above the smallest level", "no staircase step lies below r0");
    Audit audit{{"C", C}, {"r0", r0}, {"domain_lower", beta.domain_lower()}};
    return TransferResult{TransferKind::weak_lsi, BetaProfile::log_rate(C, r0), std::move(audit)};
}

TransferResult weak_lsi_to_poincare(const BetaProfile& beta, std::optional<DyadicParams> params,
                                    std::size_t budget) {
    const auto* rate = std::get_if<LogRate>(&beta.family());
    if (rate == nullptr || rate->power != 1.0) {
        throw DomainError("weak_lsi_to_poincare needs a profile of the form C log(1/s)");
    }
    const double C = rate->C;
    const double r0 = beta.r0();

    Audit audit{{"C", C}, {"r0", r0}};
    DyadicParams p{};
    if (params) {
        require_feasible(*params, r0);
        p = *params;
    } else {
        const OptimizeOutcome opt = optimize_dyadic_params(C, r0, budget);
        p = opt.params;
        audit.push_back({"optimizer_evaluations", static_cast<double>(opt.evaluations)});
    }

    const double C1 = c1(p, C);
    const double C2 = c2(p, C);
    const double C3 = c3(p);
    const double alpha = (C1 + C2) / (1.0 - C3);

    audit.push_back({"delta", p.delta()});
    audit.push_back({"delta0", p.delta0()});
    audit.push_back({"epsilon", p.epsilon});
    audit.push_back({"A", p.A()});
    audit.push_back({"C1", C1});
    audit.push_back({"C2", C2});
    audit.push_back({"C3", C3});
    audit.push_back({"r_first_band", p.first_band_r()});
    for (int n = 0; n < 10; ++n) audit.push_back({indexed("r", n), p.schedule_r(n)});
    audit.push_back({"sup_r_n", p.schedule_r(0)});
    audit.push_back({"alpha_per_half", alpha});
    audit.push_back({"alpha_combined", alpha});
    audit.push_back({"alpha_split_factor_two", 2.0 * alpha});
    audit.push_back({"alpha", alpha});

    return TransferResult{TransferKind::poincare, AlphaProfile::constant(alpha), std::move(audit)};
}

}  // namespace fineq::transfer
