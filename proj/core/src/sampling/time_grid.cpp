#include "fineq/sampling/time_grid.hpp"

#include <algorithm>
#include <cmath>

#include "fineq/error.hpp"

namespace fineq::sampling {

TimeGrid::TimeGrid(std::vector<double> nodes) : nodes_(std::move(nodes)) {
    if (nodes_.size() < 2) throw DomainError("time grid needs at least two nodes");
    if (nodes_.front() != 0.0) throw DomainError("time grid must start at 0");
    for (std::size_t k = 1; k < nodes_.size(); ++k) {
        if (!(nodes_[k] > nodes_[k - 1]) || !std::isfinite(nodes_[k])) {
            throw DomainError("time grid must be strictly increasing and finite");
        }
    }
}

TimeGrid TimeGrid::uniform(double T, std::size_t steps) {
    if (!(T > 0.0) || steps == 0) throw DomainError("uniform grid needs T > 0 and at least one step");
    std::vector<double> t(steps + 1);
    for (std::size_t k = 0; k < steps; ++k) t[k] = T * static_cast<double>(k) / static_cast<double>(steps);
    t[steps] = T;
    return TimeGrid(std::move(t));
}

TimeGrid TimeGrid::bridge_refined(double T, std::size_t steps, double lambda, int tail_levels, double floor) {
    if (!(T > 0.0) || steps == 0) throw DomainError("bridge grid needs T > 0 and at least one step");
    if (!(lambda > 0.0 && lambda < 1.0)) throw DomainError("refinement ratio lambda must lie in (0, 1)");
    if (tail_levels < 0) throw DomainError("tail_levels must be non-negative");
    const double h = T / static_cast<double>(steps);
    std::vector<double> t;
    t.reserve(steps + static_cast<std::size_t>(tail_levels) + 1);
    for (std::size_t k = 0; k < steps; ++k) t.push_back(T * static_cast<double>(k) / static_cast<double>(steps));
    double gap = h;
    for (int k = 1; k <= tail_levels; ++k) {
        gap *= lambda;
        if (gap < floor * T) break;
        const double node = T - gap;
        if (node > t.back()) t.push_back(node);
    }
    t.push_back(T);
    return TimeGrid(std::move(t));
}

double TimeGrid::max_step() const noexcept {
    double m = 0.0;
    for (std::size_t k = 1; k < nodes_.size(); ++k) m = std::max(m, nodes_[k] - nodes_[k - 1]);
    return m;
}

std::size_t TimeGrid::index_of(double t) const {
    const double tol = 1e-12 * T();
    const auto it = std::lower_bound(nodes_.begin(), nodes_.end(), t - tol);
    if (it == nodes_.end() || std::abs(*it - t) > tol) throw DomainError("time is not a grid node");
    return static_cast<std::size_t>(it - nodes_.begin());
}

}  // namespace fineq::sampling
