#include <benchmark/benchmark.h>

#include "fineq/geometry/heat_kernel.hpp"
#include "fineq/sampling/philox.hpp"
#include "fineq/sampling/samplers.hpp"
#include "fineq/transfer/dyadic.hpp"

using namespace fineq;

static void BM_philox_normals(benchmark::State& state) {
    const sampling::NormalStream rng(1);
    std::vector<double> out(static_cast<std::size_t>(state.range(0)));
    std::uint64_t path = 0;
    for (auto _ : state) {
        rng.fill(path++, 0, out);
        benchmark::DoNotOptimize(out.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_philox_normals)->Arg(4)->Arg(64);

static void BM_log_heat_kernel(benchmark::State& state) {
    const geometry::HeatKernelParams p{static_cast<int>(state.range(0))};
    double r = 0.1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(geometry::log_heat_kernel(0.3, r, p));
        r = r < 5 ? r + 0.01 : 0.1;
    }
}
BENCHMARK(BM_log_heat_kernel)->Arg(2)->Arg(3);

static void BM_grad_log_heat_kernel(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const auto y0 = geometry::HPoint::origin(n);
    Eigen::VectorXd s = Eigen::VectorXd::Constant(n, 0.4);
    const auto x = geometry::HPoint::from_spatial(s);
    for (auto _ : state) benchmark::DoNotOptimize(geometry::grad_log_heat_kernel(0.5, x, y0, {n}));
}
BENCHMARK(BM_grad_log_heat_kernel)->Arg(2)->Arg(3);

static void BM_hyperbolic_bridge(benchmark::State& state) {
    sampling::SamplerConfig c;
    c.n_paths = 64;
    c.dim = 3;
    c.grid = sampling::TimeGrid::bridge_refined(1.0, static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        auto e = sampling::sample_hyperbolic_bridge(c);
        benchmark::DoNotOptimize(e.data.data());
        ++c.seed;
    }
    state.SetItemsProcessed(state.iterations() * 64 * state.range(0));
}
BENCHMARK(BM_hyperbolic_bridge)->Arg(32)->Arg(128)->Unit(benchmark::kMillisecond);

static void BM_flat_bridge(benchmark::State& state) {
    sampling::SamplerConfig c;
    c.n_paths = 1000;
    c.dim = 3;
    c.grid = sampling::TimeGrid::uniform(1.0, 64);
    for (auto _ : state) benchmark::DoNotOptimize(sampling::sample_flat_bridge(c).data.data());
    state.SetItemsProcessed(state.iterations() * 1000 * 64);
}
BENCHMARK(BM_flat_bridge)->Unit(benchmark::kMillisecond);

static void BM_dyadic_optimizer(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(transfer::optimize_dyadic_params(1.0, 0.5, static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(BM_dyadic_optimizer)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
