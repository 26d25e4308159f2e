#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "fineq/sampling/time_grid.hpp"

namespace fineq::sampling {

/// Measure a path ensemble was drawn from. `gaussian` is a single standard
/// normal vector stored as the t = 1 node of a one-step grid.
enum class MeasureTag { wiener, flat_bridge, ou, hyperbolic_bridge, gaussian };

std::string_view to_string(MeasureTag tag) noexcept;
MeasureTag measure_tag_from(std::string_view name);
inline bool is_hyperbolic(MeasureTag t) noexcept { return t == MeasureTag::hyperbolic_bridge; }

/// Per-node states of one path: `point(k)` has `dim` coordinates (ambient
/// coordinates on the hyperboloid, time-like last).
struct PathView {
    const TimeGrid* grid;
    std::span<const double> data;
    int dim;

    std::size_t size() const noexcept { return grid->size(); }
    std::span<const double> point(std::size_t k) const { return data.subspan(k * dim, dim); }
};

struct BridgeDiagnostics {
    /// d(y_{t_{N-1}}, y0) per path, before the endpoint snap.
    std::vector<double> pre_snap_gap;
    std::uint64_t drift_cap_events = 0;
    std::uint64_t drift_evaluations = 0;
};

/// Path-major block of f64 states for n_paths paths on one grid.
struct Ensemble {
    MeasureTag tag = MeasureTag::wiener;
    TimeGrid grid = TimeGrid::uniform(1.0, 1);
    int dim = 1;
    std::size_t n_paths = 0;
    std::vector<double> data;
    /// Optional orthonormal frames: per path, per node, dim-1 (hyperbolic) vectors of dim coordinates.
    std::vector<double> frames;
    std::optional<BridgeDiagnostics> diagnostics;
    /// Sampler configuration that produced the ensemble.
    nlohmann::json config = nlohmann::json::object();

    std::size_t stride() const noexcept { return grid.size() * static_cast<std::size_t>(dim); }
    PathView path(std::size_t p) const { return PathView{&grid, std::span<const double>(data).subspan(p * stride(), stride()), dim}; }
    /// State dimension of the underlying space (dim - 1 on the hyperboloid).
    int space_dim() const noexcept { return is_hyperbolic(tag) ? dim - 1 : dim; }
    /// Coordinate c at node k of every path.
    std::vector<double> column(std::size_t k, int c) const;
};

}  // namespace fineq::sampling
