#pragma once

#include <cmath>

namespace fineq::transfer {

template <class Rate>
bool non_increasing_on_log_grid(const Rate& rate, double lo, double hi, int points) {
    const double llo = std::log(lo);
    const double step = (std::log(hi) - llo) / (points - 1);
    double prev = 0.0;
    for (int i = 0; i < points; ++i) {
        const double s = i == 0 ? lo : i + 1 == points ? hi : std::exp(llo + step * i);
        const double v = rate(s);
        if (!(v > 0.0) || !std::isfinite(v)) return false;
        if (i > 0 && v > prev) return false;
        prev = v;
    }
    return true;
}

}  // namespace fineq::transfer
