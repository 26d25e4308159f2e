#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "fineq/geometry/heat_kernel.hpp"
#include "fineq/sampling/ensemble.hpp"

namespace fineq::sampling {

enum class OUScheme { exact, euler };

struct SamplerConfig {
    std::uint64_t seed = 0;
    std::size_t n_paths = 1;
    TimeGrid grid = TimeGrid::uniform(1.0, 64);
    /// Flat dimension d, or n for H^n.
    int dim = 1;
    /// Flat start (empty = origin). For the flat bridge also the endpoint unless `y0` is set.
    std::vector<double> x0;
    /// Bridge endpoint (flat) or spatial coordinates of y0 (hyperbolic); empty = x0.
    std::vector<double> y0;
    OUScheme ou_scheme = OUScheme::exact;
    /// Draw u_0 from the stationary law instead of starting at x0.
    bool ou_stationary = true;
    /// Drift magnitudes above cap * (d/(T-t) + 1/sqrt(T-t)) are clipped; <= 0 means
    /// the heat-kernel bound constant max(1, sqrt T).
    double drift_cap = 0.0;
    bool store_frames = false;
    int threads = 1;

    int validate() const;
};

nlohmann::json to_json(const SamplerConfig& cfg, MeasureTag tag);
SamplerConfig sampler_config_from_json(const nlohmann::json& j);

Ensemble sample_wiener(const SamplerConfig& cfg);
Ensemble sample_flat_bridge(const SamplerConfig& cfg);
Ensemble sample_ou(const SamplerConfig& cfg);
/// Standard Gaussian vectors in R^dim (grid {0, 1}, sample at node 1).
Ensemble sample_gaussian(const SamplerConfig& cfg);
Ensemble sample_hyperbolic_bridge(const SamplerConfig& cfg);

Ensemble sample(MeasureTag tag, const SamplerConfig& cfg);

/// Streams hyperbolic bridge paths to `visit(path_index, path, pre_snap_gap)`
/// without storing the ensemble. With threads > 1 the visitor is called
/// concurrently for distinct indices. Returns the aggregated diagnostics
/// (pre_snap_gap filled per path).
using HyperbolicVisitor = std::function<void(std::size_t, const PathView&, double)>;
BridgeDiagnostics for_each_hyperbolic_path(const SamplerConfig& cfg, const HyperbolicVisitor& visit);

}  // namespace fineq::sampling
