#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace fineq::transfer {

struct AuditEntry {
    std::string name;
    double value;
    bool operator==(const AuditEntry&) const = default;
};

/// Ordered trail of every intermediate constant a transfer produced.
using Audit = std::vector<AuditEntry>;

/// Value of the first audit entry called `name`; throws DomainError if absent.
double audit_value(const Audit& audit, std::string_view name);

// ---------------------------------------------------------------------------
// Rate-function families
// ---------------------------------------------------------------------------

/// rate(s) = C * log(1/s)^power on (0, r0).
struct LogRate {
    double C = 1.0;
    double power = 1.0;
    bool operator==(const LogRate&) const = default;
};

/// Right-continuous step function on an increasing grid: value[j] on
/// [s[j], s[j+1]); the last value extends to r0.
struct Tabulated {
    std::vector<double> s;
    std::vector<double> value;
    bool operator==(const Tabulated&) const = default;
};

/// rate(s) = coefficient * levels[j]^2 with j the first index such that
/// thresholds[j] <= s. Thresholds are non-increasing; s at or above
/// thresholds.front() takes the first level.
struct Staircase {
    std::vector<int> levels;
    std::vector<double> thresholds;
    double coefficient = 2.0;
    bool operator==(const Staircase&) const = default;
};

/// Continuous inverse of the weighted-certificate level function:
/// rate(s) = 2 r(s)^2 where b(r(s)) = s and r(s) >= r_min.
struct SmoothWeighted {
    double a = 1.0;
    double C = 1.0;
    double M = 1.0;
    double r_min = 1.0;
    bool operator==(const SmoothWeighted&) const = default;
};

/// Rate s -> beta(s) of a weak log-Sobolev inequality
///   Ent(f^2) <= beta(s) E|grad f|^2 + s |f|_inf^2.
class BetaProfile {
public:
    using Family = std::variant<LogRate, Tabulated, Staircase, SmoothWeighted>;

    BetaProfile(Family family, double r0);

    static BetaProfile log_rate(double C, double r0, double power = 1.0) {
        return BetaProfile(LogRate{C, power}, r0);
    }

    double operator()(double s) const;

    /// Upper end of the nominal domain (0, r0).
    double r0() const noexcept { return r0_; }
    /// Smallest s the profile can be evaluated at (0 for closed forms).
    double domain_lower() const noexcept;
    const Family& family() const noexcept { return family_; }
    std::string_view family_name() const noexcept;

    bool operator==(const BetaProfile&) const = default;

private:
    Family family_;
    double r0_;
};

/// alpha(s) = alpha for every s (a genuine Poincare inequality).
struct ConstantRate {
    double alpha = 1.0;
    bool operator==(const ConstantRate&) const = default;
};

/// Rate s -> alpha(s) of a weak Poincare inequality
///   Var(f) <= alpha(s) E|grad f|^2 + s |f|_inf^2.
class AlphaProfile {
public:
    using Family = std::variant<ConstantRate, Tabulated>;

    AlphaProfile(Family family, double r0);
    static AlphaProfile constant(double alpha);

    double operator()(double s) const;
    bool is_constant() const noexcept { return std::holds_alternative<ConstantRate>(family_); }
    double r0() const noexcept { return r0_; }
    double domain_lower() const noexcept;
    const Family& family() const noexcept { return family_; }
    std::string_view family_name() const noexcept;

    bool operator==(const AlphaProfile&) const = default;

private:
    Family family_;
    double r0_;
};

// ---------------------------------------------------------------------------
// Hypotheses
// ---------------------------------------------------------------------------

/// |grad u| <= a and sqrt(E exp(C_exp u^2)) <= M for the weight u of an
/// inequality Ent(f^2) <= E[u^2 |grad f|^2].
struct WeightedLSICertificate {
    double a = 1.0;
    double C_exp = 1.0;
    double M = 1.0;

    void validate() const;
    bool operator==(const WeightedLSICertificate&) const = default;
};

class TailBound;

/// min(1, A exp(-c s^2)).
struct GaussianTail {
    double A = 1.0;
    double c = 1.0;
    bool operator==(const GaussianTail&) const = default;
};

struct ConstantTail {
    double value = 1.0;
    bool operator==(const ConstantTail&) const = default;
};

/// Beyond anchor_s the bound continues as anchor_m * exp(-kappa (s^2 - anchor_s^2)).
struct GaussianExtrapolation {
    double anchor_s = 0.0;
    double anchor_m = 1.0;
    double kappa = 0.0;
    bool operator==(const GaussianExtrapolation&) const = default;
};

/// Upper-confidence survival bound on a grid (step function, right-continuous),
/// optionally continued by a fitted Gaussian-type extrapolation.
struct EmpiricalTail {
    std::vector<double> s;
    std::vector<double> m;
    std::size_t n_samples = 0;
    double confidence = 0.99;
    std::optional<GaussianExtrapolation> extrapolation;
    bool operator==(const EmpiricalTail&) const = default;
};

/// Tail of u = sqrt(C1 + C2 U^2) given a tail bound for U >= 0.
struct AidaTransform {
    std::shared_ptr<const TailBound> inner;
    double C1 = 1.0;
    double C2 = 1.0;
    bool operator==(const AidaTransform& o) const;
};

/// Non-increasing bound s -> m(s) >= mu(u > s) for a non-negative functional u.
class TailBound {
public:
    using Family = std::variant<GaussianTail, ConstantTail, EmpiricalTail, AidaTransform>;

    explicit TailBound(Family family);

    double operator()(double s) const;
    bool is_empirical() const noexcept;
    const Family& family() const noexcept { return family_; }
    std::string_view family_name() const noexcept;

    bool operator==(const TailBound&) const = default;

private:
    Family family_;
};

TailBound aida_transform(TailBound inner, double C1, double C2);

// ---------------------------------------------------------------------------
// Results
// ---------------------------------------------------------------------------

enum class TransferKind { weak_lsi, poincare, weak_poincare };

std::string_view to_string(TransferKind kind) noexcept;

struct TransferResult {
    TransferKind kind;
    std::variant<BetaProfile, AlphaProfile> profile;
    Audit audit;

    const BetaProfile& beta() const;
    const AlphaProfile& alpha() const;
    bool operator==(const TransferResult&) const = default;
};

/// True iff `rate` is positive and non-increasing on a log-spaced grid of
/// `points` values spanning [lo, hi].
template <class Rate>
bool non_increasing_on_log_grid(const Rate& rate, double lo, double hi, int points = 1000);

}  // namespace fineq::transfer

#include "fineq/transfer/profiles_inl.hpp"
