#pragma once

#include <span>

namespace fineq::transfer {

/// phi = log(level) on the support, -inf elsewhere.
struct StepPotential {
    double level;
    std::span<const unsigned char> support;
};

struct EntropyCheck {
    bool holds;
    double lhs;       // mean(G^2 phi); -inf if G is non-zero off the support
    double rhs;       // Ent(G^2)
    double exp_mean;  // mean(exp(phi))
};

/// Checks mean(G^2 phi) <= Ent(G^2) + slack on the empirical measure of the
/// samples. Throws DomainError when mean(exp(phi)) > 1.
EntropyCheck entropy_inequality_check(std::span<const double> G, const StepPotential& phi,
                                      double slack = 0.0);

}  // namespace fineq::transfer
