#include "fineq/transfer/entropy_check.hpp"

#include <cmath>
#include <limits>

#include "fineq/error.hpp"
#include "fineq/stats/summation.hpp"

namespace fineq::transfer {

EntropyCheck entropy_inequality_check(std::span<const double> G, const StepPotential& phi, double slack) {
    if (G.empty()) throw DataError("entropy check needs at least one sample");
    if (phi.support.size() != G.size()) throw DataError("support indicator and samples differ in length");
    if (!(phi.level > 0.0) || !std::isfinite(phi.level)) throw DomainError("potential level must be positive");

    const double n = static_cast<double>(G.size());
    const double log_level = std::log(phi.level);
    std::size_t on_support = 0;
    bool off_support_mass = false;
    stats::CompensatedSum g_sum;
    stats::CompensatedSum weighted;
    for (std::size_t i = 0; i < G.size(); ++i) {
        if (!std::isfinite(G[i])) throw DataError("non-finite sample");
        const double g = G[i] * G[i];
        g_sum.add(g);
        if (phi.support[i]) {
            ++on_support;
            weighted.add(g * log_level);
        } else if (g > 0.0) {
            off_support_mass = true;
        }
    }
    const double exp_mean = phi.level * (static_cast<double>(on_support) / n);
    if (exp_mean > 1.0) throw DomainError("potential violates E exp(phi) <= 1 on the samples");

    const double lhs = off_support_mass ? -std::numeric_limits<double>::infinity() : weighted.value() / n;
    const double g_mean = g_sum.value() / n;
    stats::CompensatedSum ent;
    if (g_mean > 0.0) {
        for (double x : G) {
            const double g = x * x;
            if (g > 0.0) ent.add(g * std::log(g / g_mean));
        }
    }
    const double rhs = ent.value() / n;
    return EntropyCheck{lhs <= rhs + slack, lhs, rhs, exp_mean};
}

}  // namespace fineq::transfer
