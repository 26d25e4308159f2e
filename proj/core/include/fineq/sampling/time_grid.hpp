#pragma once

#include <cstddef>
#include <vector>

namespace fineq::sampling {

/// Strictly increasing nodes 0 = t_0 < ... < t_N = T with t_N == T exactly.
class TimeGrid {
public:
    explicit TimeGrid(std::vector<double> nodes);

    /// N equal steps.
    static TimeGrid uniform(double T, std::size_t steps);

    /// Uniform step T/steps up to T - h, then T - h lambda^k for k = 1..tail_levels
    /// (stopping before the gap falls under floor * T), then T.
    static TimeGrid bridge_refined(double T, std::size_t steps, double lambda = 0.5, int tail_levels = 8,
                                   double floor = 1e-6);

    double T() const noexcept { return nodes_.back(); }
    const std::vector<double>& nodes() const noexcept { return nodes_; }
    std::size_t size() const noexcept { return nodes_.size(); }
    double operator[](std::size_t k) const { return nodes_[k]; }
    double max_step() const noexcept;
    /// Index of the node equal to t (within 1e-12 T); throws DomainError if none.
    std::size_t index_of(double t) const;

    bool operator==(const TimeGrid&) const = default;

private:
    std::vector<double> nodes_;
};

}  // namespace fineq::sampling
