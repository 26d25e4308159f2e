#include "fineq/transfer/profiles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "fineq/error.hpp"

namespace fineq::transfer {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require_positive_s(double s) {
    if (!(s > 0.0) || !std::isfinite(s)) {
        throw DomainError("rate profile evaluated at non-positive or non-finite s");
    }
}

double eval_tabulated(const Tabulated& t, double s, double r0) {
    if (s < t.s.front()) throw DomainError("s below the tabulated range");
    if (s >= r0) throw DomainError("s at or above r0");
    const auto it = std::upper_bound(t.s.begin(), t.s.end(), s);
    return t.value[static_cast<std::size_t>(it - t.s.begin()) - 1];
}

void validate_tabulated(const Tabulated& t) {
    if (t.s.empty() || t.s.size() != t.value.size()) {
        throw DomainError("tabulated profile needs matching non-empty grids");
    }
    for (std::size_t i = 0; i < t.s.size(); ++i) {
        if (!(t.s[i] > 0.0) || !(t.value[i] > 0.0)) {
            throw DomainError("tabulated profile requires positive grid and values");
        }
        if (i > 0 && (t.s[i] <= t.s[i - 1] || t.value[i] > t.value[i - 1])) {
            throw DomainError("tabulated profile must be increasing in s and non-increasing in value");
        }
    }
}

// b(r) for the smooth inversion; duplicated from transfers.cpp to keep the
// profile self-contained.
double smooth_level(const SmoothWeighted& w, double r) {
    return (4.0 * w.a * w.a * r * r + 1.0 / std::numbers::e + 1.0) * w.M *
           std::exp(-0.5 * w.C * (r - 1.0) * (r - 1.0));
}

double eval_smooth(const SmoothWeighted& w, double s) {
    if (smooth_level(w, w.r_min) <= s) return 2.0 * w.r_min * w.r_min;
    double lo = w.r_min;
    double hi = w.r_min + 1.0;
    while (smooth_level(w, hi) > s) {
        lo = hi;
        hi = w.r_min + 2.0 * (hi - w.r_min);
        if (hi > 1e154) throw DomainError("smooth weighted profile: s too small");
    }
    const double log_s = std::log(s);
    for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (std::log(smooth_level(w, mid)) > log_s) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 2.0 * hi * hi;
}

}  // namespace

double audit_value(const Audit& audit, std::string_view name) {
    for (const auto& e : audit) {
        if (e.name == name) return e.value;
    }
    throw DomainError("audit has no entry '" + std::string(name) + "'");
}

// ----------------------------------------------------------------------------
// BetaProfile

BetaProfile::BetaProfile(Family family, double r0) : family_(std::move(family)), r0_(r0) {
    if (!(r0 > 0.0)) throw DomainError("profile domain bound r0 must be positive");
    std::visit(overloaded{
                   [](const LogRate& l) {
                       if (!(l.C > 0.0) || !(l.power > 0.0)) {
                           throw DomainError("log-rate profile needs C > 0 and power > 0");
                       }
                   },
                   [](const Tabulated& t) { validate_tabulated(t); },
                   [](const Staircase& st) {
                       if (st.levels.empty() || st.levels.size() != st.thresholds.size()) {
                           throw DomainError("staircase needs matching non-empty levels");
                       }
                       for (std::size_t i = 1; i < st.levels.size(); ++i) {
                           if (st.thresholds[i] > st.thresholds[i - 1] || st.levels[i] <= st.levels[i - 1]) {
                               throw DomainError("staircase thresholds must be non-increasing");
                           }
                       }
                       if (!(st.thresholds.back() > 0.0)) throw DomainError("staircase thresholds must be positive");
                   },
                   [](const SmoothWeighted& w) {
                       if (!(w.a > 0.0) || !(w.C > 0.0) || !(w.M >= 1.0)) {
                           throw DomainError("smooth weighted profile needs a, C > 0 and M >= 1");
                       }
                   },
               },
               family_);
    if (std::holds_alternative<LogRate>(family_) && r0_ > 1.0) {
        throw DomainError("log-rate profile needs r0 <= 1 to stay positive");
    }
}

double BetaProfile::operator()(double s) const {
    require_positive_s(s);
    return std::visit(
        overloaded{
            [&](const LogRate& l) {
                if (s >= r0_) throw DomainError("s at or above r0");
                const double L = std::log(1.0 / s);
                return l.power == 1.0 ? l.C * L : l.C * std::pow(L, l.power);
            },
            [&](const Tabulated& t) { return eval_tabulated(t, s, r0_); },
            [&](const Staircase& st) {
                // first index with threshold <= s
                const auto it = std::partition_point(st.thresholds.begin(), st.thresholds.end(),
                                                     [s](double th) { return th > s; });
                if (it == st.thresholds.end()) {
                    throw DomainError("s below the smallest derivable level");
                }
                const double n = st.levels[static_cast<std::size_t>(it - st.thresholds.begin())];
                return st.coefficient * n * n;
            },
            [&](const SmoothWeighted& w) { return eval_smooth(w, s); },
        },
        family_);
}

double BetaProfile::domain_lower() const noexcept {
    if (const auto* t = std::get_if<Tabulated>(&family_)) return t->s.front();
    if (const auto* st = std::get_if<Staircase>(&family_)) return st->thresholds.back();
    return 0.0;
}

std::string_view BetaProfile::family_name() const noexcept {
    switch (family_.index()) {
        case 0: return "c_log_inv_s";
        case 1: return "tabulated";
        case 2: return "staircase";
        default: return "smooth_weighted";
    }
}

// ----------------------------------------------------------------------------
// AlphaProfile

AlphaProfile::AlphaProfile(Family family, double r0) : family_(std::move(family)), r0_(r0) {
    if (!(r0 > 0.0)) throw DomainError("profile domain bound r0 must be positive");
    if (const auto* c = std::get_if<ConstantRate>(&family_)) {
        if (!(c->alpha > 0.0) || !std::isfinite(c->alpha)) {
            throw DomainError("Poincare constant must be positive and finite");
        }
    } else {
        validate_tabulated(std::get<Tabulated>(family_));
    }
}

AlphaProfile AlphaProfile::constant(double alpha) {
    return AlphaProfile(ConstantRate{alpha}, std::numeric_limits<double>::max());
}

double AlphaProfile::operator()(double s) const {
    require_positive_s(s);
    if (const auto* c = std::get_if<ConstantRate>(&family_)) return c->alpha;
    return eval_tabulated(std::get<Tabulated>(family_), s, r0_);
}

double AlphaProfile::domain_lower() const noexcept {
    if (const auto* t = std::get_if<Tabulated>(&family_)) return t->s.front();
    return 0.0;
}

std::string_view AlphaProfile::family_name() const noexcept {
    return is_constant() ? "constant" : "tabulated";
}

// ----------------------------------------------------------------------------
// TailBound

bool AidaTransform::operator==(const AidaTransform& o) const {
    const bool same_inner = inner == o.inner || (inner && o.inner && *inner == *o.inner);
    return same_inner && C1 == o.C1 && C2 == o.C2;
}

TailBound::TailBound(Family family) : family_(std::move(family)) {
    std::visit(overloaded{
                   [](const GaussianTail& g) {
                       if (!(g.A > 0.0) || !(g.c > 0.0)) throw DomainError("Gaussian tail needs A, c > 0");
                   },
                   [](const ConstantTail& c) {
                       if (!(c.value >= 0.0 && c.value <= 1.0)) throw DomainError("constant tail must lie in [0, 1]");
                   },
                   [](const EmpiricalTail& e) {
                       if (e.s.empty() || e.s.size() != e.m.size()) {
                           throw DomainError("empirical tail needs matching non-empty grids");
                       }
                       for (std::size_t i = 0; i < e.s.size(); ++i) {
                           if (e.m[i] < 0.0 || e.m[i] > 1.0) throw DomainError("tail values must lie in [0, 1]");
                           if (i > 0 && (e.s[i] <= e.s[i - 1] || e.m[i] > e.m[i - 1])) {
                               throw DomainError("empirical tail must be non-increasing on an increasing grid");
                           }
                       }
                       if (e.extrapolation && !(e.extrapolation->kappa > 0.0)) {
                           throw DomainError("tail extrapolation needs a positive decay rate");
                       }
                   },
                   [](const AidaTransform& a) {
                       if (!a.inner) throw DomainError("Aida transform needs an inner tail");
                       if (!(a.C1 >= 0.0) || !(a.C2 > 0.0)) throw DomainError("Aida weight needs C1 >= 0, C2 > 0");
                   },
               },
               family_);
}

double TailBound::operator()(double s) const {
    if (std::isnan(s)) throw DomainError("tail bound evaluated at NaN");
    if (s < 0.0) return 1.0;
    return std::visit(
        overloaded{
            [&](const GaussianTail& g) { return std::min(1.0, g.A * std::exp(-g.c * s * s)); },
            [&](const ConstantTail& c) { return c.value; },
            [&](const EmpiricalTail& e) {
                if (e.extrapolation && s > e.extrapolation->anchor_s) {
                    const auto& x = *e.extrapolation;
                    return x.anchor_m * std::exp(-x.kappa * (s * s - x.anchor_s * x.anchor_s));
                }
                if (s < e.s.front()) return 1.0;
                const auto it = std::upper_bound(e.s.begin(), e.s.end(), s);
                return e.m[static_cast<std::size_t>(it - e.s.begin()) - 1];
            },
            [&](const AidaTransform& a) {
                const double excess = s * s - a.C1;
                if (excess <= 0.0) return (*a.inner)(0.0);
                return (*a.inner)(std::sqrt(excess / a.C2));
            },
        },
        family_);
}

bool TailBound::is_empirical() const noexcept {
    if (std::holds_alternative<EmpiricalTail>(family_)) return true;
    if (const auto* a = std::get_if<AidaTransform>(&family_)) return a->inner->is_empirical();
    return false;
}

std::string_view TailBound::family_name() const noexcept {
    switch (family_.index()) {
        case 0: return "gaussian";
        case 1: return "constant";
        case 2: return "empirical";
        default: return "aida_transform";
    }
}

TailBound aida_transform(TailBound inner, double C1, double C2) {
    return TailBound(AidaTransform{std::make_shared<const TailBound>(std::move(inner)), C1, C2});
}

// ----------------------------------------------------------------------------

std::string_view to_string(TransferKind kind) noexcept {
    switch (kind) {
        case TransferKind::weak_lsi: return "weak_lsi";
        case TransferKind::poincare: return "poincare";
        default: return "weak_poincare";
    }
}

const BetaProfile& TransferResult::beta() const {
    if (const auto* b = std::get_if<BetaProfile>(&profile)) return *b;
    throw DomainError("transfer result does not carry a beta profile");
}

const AlphaProfile& TransferResult::alpha() const {
    if (const auto* a = std::get_if<AlphaProfile>(&profile)) return *a;
    throw DomainError("transfer result does not carry an alpha profile");
}

void WeightedLSICertificate::validate() const {
    if (!std::isfinite(a) || !std::isfinite(C_exp) || !std::isfinite(M)) {
        throw DomainError("weighted LSI certificate has non-finite fields");
    }
    if (!(a > 0.0)) throw DomainError("weighted LSI certificate needs a > 0");
    if (!(C_exp > 0.0)) throw DomainError("weighted LSI certificate needs C > 0");
    if (!(M >= 1.0)) throw DomainError("weighted LSI certificate needs M >= 1");
}

}  // namespace fineq::transfer
