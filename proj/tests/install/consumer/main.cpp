#include <cmath>
#include <cstdio>

#include "fineq/geometry/heat_kernel.hpp"
#include "fineq/transfer/transfers.hpp"

int main() {
    const auto res = fineq::transfer::weighted_lsi_to_weak_lsi({1.0, 2.0, 1.0});
    const double p = fineq::geometry::heat_kernel(1.0, 0.5, {3});
    std::printf("beta(1e-3) = %g, p = %g\n", res.beta()(1e-3), p);
    return std::isfinite(p) && res.beta()(1e-3) > 0 ? 0 : 1;
}
