#include "fineq/sampling/samplers.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "fineq/error.hpp"
#include "fineq/sampling/philox.hpp"

namespace fineq::sampling {

using geometry::Ambient;
using geometry::HPoint;

namespace {

template <class Fn>
void parallel_for(std::size_t n, int threads, Fn&& fn) {
    const std::size_t workers = std::clamp<std::size_t>(threads < 1 ? 1 : threads, 1, std::max<std::size_t>(n, 1));
    if (workers == 1) {
        fn(std::size_t{0}, n);
        return;
    }
    std::vector<std::thread> pool;
    std::exception_ptr error;
    std::mutex error_mutex;
    const std::size_t chunk = (n + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t lo = w * chunk;
        const std::size_t hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&, lo, hi] {
            try {
                fn(lo, hi);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

std::vector<double> start_point(const std::vector<double>& x, int dim, const char* what) {
    if (x.empty()) return std::vector<double>(dim, 0.0);
    if (static_cast<int>(x.size()) != dim) throw DomainError(std::string(what) + " has the wrong dimension");
    return x;
}

Ensemble make_ensemble(MeasureTag tag, const SamplerConfig& cfg, int dim) {
    Ensemble e;
    e.tag = tag;
    e.grid = cfg.grid;
    e.dim = dim;
    e.n_paths = cfg.n_paths;
    e.data.assign(cfg.n_paths * e.stride(), 0.0);
    e.config = to_json(cfg, tag);
    return e;
}

// Flat Brownian motion from x0 written into `out` (nodes x dim).
void brownian_path(const NormalStream& rng, std::size_t path, const TimeGrid& grid, int dim,
                   const std::vector<double>& x0, std::span<double> out, std::vector<double>& xi) {
    std::copy(x0.begin(), x0.end(), out.begin());
    for (std::size_t k = 1; k < grid.size(); ++k) {
        const double sh = std::sqrt(grid[k] - grid[k - 1]);
        rng.fill(path, static_cast<std::uint32_t>(k - 1), xi);
        for (int c = 0; c < dim; ++c) out[k * dim + c] = out[(k - 1) * dim + c] + sh * xi[c];
    }
}

void gram_schmidt(const HPoint& y, std::vector<Ambient>& frame) {
    for (std::size_t i = 0; i < frame.size(); ++i) {
        Ambient f = geometry::project_tangent(y, frame[i]);
        for (std::size_t j = 0; j < i; ++j) f -= geometry::minkowski(f, frame[j]) * frame[j];
        const double nf = geometry::tangent_norm(f);
        if (!(nf > 0.0)) throw NumericalError("frame degenerated during transport");
        frame[i] = f / nf;
    }
}

struct HyperbolicSetup {
    int n;
    HPoint x0;
    HPoint y0;
    double cap;
    geometry::HeatKernelParams kernel;
};

HyperbolicSetup hyperbolic_setup(const SamplerConfig& cfg) {
    const int n = cfg.dim;
    if (n != 2 && n != 3) throw DomainError("hyperbolic bridge needs n = 2 or n = 3");
    auto spatial = [&](const std::vector<double>& v) {
        const auto s = start_point(v, n, "hyperbolic point");
        return HPoint::from_spatial(Eigen::Map<const Eigen::VectorXd>(s.data(), n));
    };
    HPoint x0 = spatial(cfg.x0);
    HPoint y0 = cfg.y0.empty() ? x0 : spatial(cfg.y0);
    const double cap = cfg.drift_cap > 0.0 ? cfg.drift_cap : geometry::gradient_bound_constant(n, cfg.grid.T());
    return HyperbolicSetup{n, std::move(x0), std::move(y0), cap, geometry::HeatKernelParams{n}};
}

struct PathCounters {
    std::uint64_t cap_events = 0;
    std::uint64_t evaluations = 0;
};

// One geodesic Euler-Maruyama bridge path. Returns the pre-snap gap.
double hyperbolic_path(const HyperbolicSetup& s, const NormalStream& rng, std::size_t path, const TimeGrid& grid,
                       std::span<double> out, double* frames_out, PathCounters& counters) {
    const int n = s.n;
    const int D = n + 1;
    const double T = grid.T();
    std::vector<Ambient> frame(n);
    for (int i = 0; i < n; ++i) {
        frame[i] = Ambient::Zero(D);
        frame[i][i] = 1.0;
    }
    gram_schmidt(s.x0, frame);
    std::vector<double> xi(n);
    HPoint y = s.x0;
    auto store = [&](std::size_t k, const HPoint& p) {
        for (int c = 0; c < D; ++c) out[k * D + c] = p[c];
        if (frames_out) {
            double* f = frames_out + k * n * D;
            for (int i = 0; i < n; ++i)
                for (int c = 0; c < D; ++c) f[i * D + c] = frame[i][c];
        }
    };
    store(0, y);
    const std::size_t last = grid.size() - 1;
    for (std::size_t k = 1; k < last; ++k) {
        const double h = grid[k] - grid[k - 1];
        const double tau = T - grid[k - 1];
        const Ambient l = geometry::log_map(y, s.y0);
        const double r = geometry::tangent_norm(l);
        Ambient drift = geometry::radial_drift_factor(tau, r, s.kernel) * l;
        ++counters.evaluations;
        const double bound = s.cap * (r / tau + 1.0 / std::sqrt(tau));
        const double mag = geometry::tangent_norm(drift);
        if (mag > bound) {
            drift *= bound / mag;
            ++counters.cap_events;
        }
        rng.fill(path, static_cast<std::uint32_t>(k - 1), xi);
        Ambient v = h * drift;
        const double sh = std::sqrt(h);
        for (int i = 0; i < n; ++i) v += (sh * xi[i]) * frame[i];
        HPoint next = geometry::exp_map(y, v);
        for (auto& f : frame) f = geometry::parallel_transport(y, next, f);
        gram_schmidt(next, frame);
        y = std::move(next);
        store(k, y);
    }
    const double gap = geometry::dist(y, s.y0);
    for (auto& f : frame) f = geometry::parallel_transport(y, s.y0, f);
    gram_schmidt(s.y0, frame);
    store(last, s.y0);
    return gap;
}

}  // namespace

int SamplerConfig::validate() const {
    if (n_paths < 1) throw DomainError("n_paths must be at least 1");
    if (dim < 1) throw DomainError("dimension must be at least 1");
    if (threads < 1) throw DomainError("threads must be at least 1");
    return dim;
}

std::string_view to_string(MeasureTag tag) noexcept {
    switch (tag) {
        case MeasureTag::wiener: return "wiener";
        case MeasureTag::flat_bridge: return "flat_bridge";
        case MeasureTag::ou: return "ou";
        case MeasureTag::hyperbolic_bridge: return "hyperbolic_bridge";
        default: return "gaussian";
    }
}

MeasureTag measure_tag_from(std::string_view name) {
    for (auto t : {MeasureTag::wiener, MeasureTag::flat_bridge, MeasureTag::ou, MeasureTag::hyperbolic_bridge,
                   MeasureTag::gaussian}) {
        if (to_string(t) == name) return t;
    }
    throw DataError("unknown measure '" + std::string(name) + "'");
}

std::vector<double> Ensemble::column(std::size_t k, int c) const {
    if (k >= grid.size() || c < 0 || c >= dim) throw DomainError("column index out of range");
    std::vector<double> out(n_paths);
    for (std::size_t p = 0; p < n_paths; ++p) out[p] = data[p * stride() + k * dim + c];
    return out;
}

nlohmann::json to_json(const SamplerConfig& cfg, MeasureTag tag) {
    return {{"measure", std::string(to_string(tag))},
            {"seed", cfg.seed},
            {"n_paths", cfg.n_paths},
            {"grid", cfg.grid.nodes()},
            {"dim", cfg.dim},
            {"x0", cfg.x0},
            {"y0", cfg.y0},
            {"ou_scheme", cfg.ou_scheme == OUScheme::exact ? "exact" : "euler"},
            {"ou_stationary", cfg.ou_stationary},
            {"drift_cap", cfg.drift_cap},
            {"store_frames", cfg.store_frames}};
}

SamplerConfig sampler_config_from_json(const nlohmann::json& j) {
    SamplerConfig cfg;
    cfg.seed = j.at("seed").get<std::uint64_t>();
    cfg.n_paths = j.at("n_paths").get<std::size_t>();
    cfg.grid = TimeGrid(j.at("grid").get<std::vector<double>>());
    cfg.dim = j.at("dim").get<int>();
    cfg.x0 = j.value("x0", std::vector<double>{});
    cfg.y0 = j.value("y0", std::vector<double>{});
    const auto scheme = j.value("ou_scheme", std::string("exact"));
    if (scheme != "exact" && scheme != "euler") throw DataError("unknown ou_scheme '" + scheme + "'");
    cfg.ou_scheme = scheme == "exact" ? OUScheme::exact : OUScheme::euler;
    cfg.ou_stationary = j.value("ou_stationary", true);
    cfg.drift_cap = j.value("drift_cap", 0.0);
    cfg.store_frames = j.value("store_frames", false);
    return cfg;
}

Ensemble sample_wiener(const SamplerConfig& cfg) {
    const int d = cfg.validate();
    const auto x0 = start_point(cfg.x0, d, "x0");
    Ensemble e = make_ensemble(MeasureTag::wiener, cfg, d);
    const NormalStream rng(cfg.seed);
    parallel_for(cfg.n_paths, cfg.threads, [&](std::size_t lo, std::size_t hi) {
        std::vector<double> xi(d);
        for (std::size_t p = lo; p < hi; ++p) {
            brownian_path(rng, p, e.grid, d, x0, std::span<double>(e.data).subspan(p * e.stride(), e.stride()), xi);
        }
    });
    return e;
}

Ensemble sample_flat_bridge(const SamplerConfig& cfg) {
    const int d = cfg.validate();
    const auto a = start_point(cfg.x0, d, "x0");
    const auto b = cfg.y0.empty() ? a : start_point(cfg.y0, d, "y0");
    Ensemble e = make_ensemble(MeasureTag::flat_bridge, cfg, d);
    const NormalStream rng(cfg.seed);
    const std::vector<double> zero(d, 0.0);
    const double T = e.grid.T();
    const std::size_t last = e.grid.size() - 1;
    parallel_for(cfg.n_paths, cfg.threads, [&](std::size_t lo, std::size_t hi) {
        std::vector<double> xi(d);
        for (std::size_t p = lo; p < hi; ++p) {
            auto out = std::span<double>(e.data).subspan(p * e.stride(), e.stride());
            brownian_path(rng, p, e.grid, d, zero, out, xi);
            for (int c = 0; c < d; ++c) {
                const double BT = out[last * d + c];
                for (std::size_t k = 0; k <= last; ++k) {
                    const double w = e.grid[k] / T;
                    out[k * d + c] = a[c] + (out[k * d + c] - w * BT) + w * (b[c] - a[c]);
                }
                out[c] = a[c];
                out[last * d + c] = b[c];
            }
        }
    });
    return e;
}

Ensemble sample_ou(const SamplerConfig& cfg) {
    const int d = cfg.validate();
    const auto x0 = start_point(cfg.x0, d, "x0");
    Ensemble e = make_ensemble(MeasureTag::ou, cfg, d);
    const NormalStream rng(cfg.seed);
    const std::uint32_t init_step = static_cast<std::uint32_t>(e.grid.size());
    parallel_for(cfg.n_paths, cfg.threads, [&](std::size_t lo, std::size_t hi) {
        std::vector<double> xi(d);
        for (std::size_t p = lo; p < hi; ++p) {
            auto out = std::span<double>(e.data).subspan(p * e.stride(), e.stride());
            if (cfg.ou_stationary) {
                rng.fill(p, init_step, xi);
                std::copy(xi.begin(), xi.end(), out.begin());
            } else {
                std::copy(x0.begin(), x0.end(), out.begin());
            }
            for (std::size_t k = 1; k < e.grid.size(); ++k) {
                const double h = e.grid[k] - e.grid[k - 1];
                rng.fill(p, static_cast<std::uint32_t>(k - 1), xi);
                double decay, noise;
                if (cfg.ou_scheme == OUScheme::exact) {
                    decay = std::exp(-0.5 * h);
                    noise = std::sqrt(-std::expm1(-h));
                } else {
                    decay = 1.0 - 0.5 * h;
                    noise = std::sqrt(h);
                }
                for (int c = 0; c < d; ++c) out[k * d + c] = decay * out[(k - 1) * d + c] + noise * xi[c];
            }
        }
    });
    return e;
}

Ensemble sample_gaussian(const SamplerConfig& cfg) {
    SamplerConfig one = cfg;
    one.grid = TimeGrid::uniform(1.0, 1);
    one.x0.clear();
    Ensemble e = sample_wiener(one);
    e.tag = MeasureTag::gaussian;
    e.config = to_json(one, MeasureTag::gaussian);
    return e;
}

BridgeDiagnostics for_each_hyperbolic_path(const SamplerConfig& cfg, const HyperbolicVisitor& visit) {
    cfg.validate();
    const HyperbolicSetup setup = hyperbolic_setup(cfg);
    if (cfg.grid.size() < 3) throw DomainError("hyperbolic bridge grid needs at least two steps");
    const NormalStream rng(cfg.seed);
    const int D = setup.n + 1;
    BridgeDiagnostics diag;
    diag.pre_snap_gap.assign(cfg.n_paths, 0.0);
    std::atomic<std::uint64_t> events{0}, evals{0};
    parallel_for(cfg.n_paths, cfg.threads, [&](std::size_t lo, std::size_t hi) {
        std::vector<double> buf(cfg.grid.size() * D);
        PathCounters counters;
        for (std::size_t p = lo; p < hi; ++p) {
            const double gap = hyperbolic_path(setup, rng, p, cfg.grid, buf, nullptr, counters);
            diag.pre_snap_gap[p] = gap;
            visit(p, PathView{&cfg.grid, buf, D}, gap);
        }
        events += counters.cap_events;
        evals += counters.evaluations;
    });
    diag.drift_cap_events = events.load();
    diag.drift_evaluations = evals.load();
    return diag;
}

Ensemble sample_hyperbolic_bridge(const SamplerConfig& cfg) {
    cfg.validate();
    const HyperbolicSetup setup = hyperbolic_setup(cfg);
    if (cfg.grid.size() < 3) throw DomainError("hyperbolic bridge grid needs at least two steps");
    const int D = setup.n + 1;
    Ensemble e = make_ensemble(MeasureTag::hyperbolic_bridge, cfg, D);
    const std::size_t fstride = e.grid.size() * setup.n * D;
    if (cfg.store_frames) e.frames.assign(cfg.n_paths * fstride, 0.0);
    const NormalStream rng(cfg.seed);
    BridgeDiagnostics diag;
    diag.pre_snap_gap.assign(cfg.n_paths, 0.0);
    std::atomic<std::uint64_t> events{0}, evals{0};
    parallel_for(cfg.n_paths, cfg.threads, [&](std::size_t lo, std::size_t hi) {
        PathCounters counters;
        for (std::size_t p = lo; p < hi; ++p) {
            auto out = std::span<double>(e.data).subspan(p * e.stride(), e.stride());
            double* frames = cfg.store_frames ? e.frames.data() + p * fstride : nullptr;
            diag.pre_snap_gap[p] = hyperbolic_path(setup, rng, p, e.grid, out, frames, counters);
        }
        events += counters.cap_events;
        evals += counters.evaluations;
    });
    diag.drift_cap_events = events.load();
    diag.drift_evaluations = evals.load();
    e.diagnostics = std::move(diag);
    return e;
}

Ensemble sample(MeasureTag tag, const SamplerConfig& cfg) {
    switch (tag) {
        case MeasureTag::wiener: return sample_wiener(cfg);
        case MeasureTag::flat_bridge: return sample_flat_bridge(cfg);
        case MeasureTag::ou: return sample_ou(cfg);
        case MeasureTag::hyperbolic_bridge: return sample_hyperbolic_bridge(cfg);
        default: return sample_gaussian(cfg);
    }
}

}  // namespace fineq::sampling
