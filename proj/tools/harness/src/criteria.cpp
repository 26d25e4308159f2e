#include "fineq/harness/criteria.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <chrono>
#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>

#include "fineq/error.hpp"
#include "fineq/harness/commands.hpp"
#include "fineq/estimators/estimators.hpp"
#include "fineq/estimators/tail.hpp"
#include "fineq/geometry/heat_kernel.hpp"
#include "fineq/sampling/samplers.hpp"
#include "fineq/stats/ks.hpp"
#include "fineq/stats/summation.hpp"
#include "fineq/transfer/serialization.hpp"
#include "fineq/transfer/transfers.hpp"
#include "fineq/transfer/weak_poincare.hpp"

namespace fineq::harness {

namespace {

using Clock = std::chrono::steady_clock;
using nlohmann::json;
namespace tr = fineq::transfer;
namespace sm = fineq::sampling;
namespace es = fineq::estimators;
namespace geo = fineq::geometry;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(6);
    os << x;
    return os.str();
}

// Accumulates sub-checks of one criterion; the criterion passes iff all do.
struct Checks {
    CriterionResult r;
    explicit Checks(std::string id) { r.id = std::move(id); r.passed = true; }
    void check(bool ok, const std::string& what) {
        if (!ok) {
            r.passed = false;
            r.detail += (r.detail.empty() ? "" : "; ") + std::string("failed: ") + what;
        }
    }
    CriterionResult done(Clock::time_point t0) {
        r.seconds = seconds_since(t0);
        if (r.passed && r.detail.empty()) r.detail = "all checks passed";
        return r;
    }
};

std::vector<double> log_grid(double lo, double hi, int n) {
    std::vector<double> g(n);
    const double a = std::log(lo), b = std::log(hi);
    for (int i = 0; i < n; ++i) g[i] = i == 0 ? lo : i + 1 == n ? hi : std::exp(a + (b - a) * i / (n - 1));
    return g;
}

template <class F, class G>
bool pointwise_le(const F& f, const G& g, const std::vector<double>& grid) {
    for (double s : grid)
        if (!(f(s) <= g(s))) return false;
    return true;
}

const double kPaperAlpha = 40.82;

tr::TransferResult paper_poincare(double C) {
    return tr::weak_lsi_to_poincare(tr::BetaProfile::log_rate(C, 0.5), tr::DyadicParams::from_pow2(4.5, 0.5, 0.125));
}

// ---------------------------------------------------------------- transfer

CriterionResult a1(const CriteriaOptions&) {
    const auto t0 = Clock::now();
    Checks c("A1");
    const auto cfg = ConfigNode::load_string(
        "pipeline:\n"
        "  - {stage: log_rate, C: 1, r0: 0.5}\n"
        "  - {stage: poincare, params: {delta0_pow2: 4.5, delta_pow2: 0.5, epsilon: 0.125}}\n",
        "A1");
    const auto res = run_pipeline(cfg.at("pipeline"), ".").back().result;
    const double alpha = res.alpha()(0.5);
    const double secs = seconds_since(t0);
    const double rel = alpha / kPaperAlpha - 1.0;
    c.r.metrics = {{"alpha", alpha},
                   {"relative_deviation", rel},
                   {"C1", tr::audit_value(res.audit, "C1")},
                   {"C2", tr::audit_value(res.audit, "C2")},
                   {"C3", tr::audit_value(res.audit, "C3")},
                   {"A", tr::audit_value(res.audit, "A")},
                   {"runtime_seconds", secs}};
    c.check(std::abs(rel) <= 0.10, "alpha " + fmt(alpha) + " not within 10% of 40.82");
    c.check(tr::audit_value(res.audit, "A") == 9.0, "A is not exactly 9");
    c.check(secs < 1.0, "runtime above 1 s");
    c.r.detail = "alpha = " + fmt(alpha) + " (" + fmt(100 * rel) + "% from 40.82)";
    return c.done(t0);
}

CriterionResult a2(const CriteriaOptions&) {
    const auto t0 = Clock::now();
    Checks c("A2");
    const auto first = tr::optimize_dyadic_params(1.0, 0.5, 10000);
    const double secs = seconds_since(t0);
    const auto second = tr::optimize_dyadic_params(1.0, 0.5, 10000);
    const double paper = paper_poincare(1.0).alpha()(0.5);
    c.r.metrics = {{"objective", first.objective},     {"paper_objective", paper},
                   {"delta", first.params.delta()},    {"delta0", first.params.delta0()},
                   {"epsilon", first.params.epsilon}, {"evaluations", first.evaluations},
                   {"runtime_seconds", secs}};
    c.check(first.objective <= paper, "optimizer objective above the hand-picked point");
    c.check(first.params == second.params && first.objective == second.objective, "optimizer not deterministic");
    c.check(!tr::violated_constraint(first.params, 0.5), "returned parameters infeasible");
    c.check(secs < 10.0, "runtime above 10 s");
    c.r.detail = "objective " + fmt(first.objective) + " <= " + fmt(paper);
    return c.done(t0);
}

CriterionResult a3(const CriteriaOptions&) {
    const auto t0 = Clock::now();
    Checks c("A3");
    json m;

    // Linearity in C at fixed parameters, argmin invariance.
    const double base = paper_poincare(1.0).alpha()(0.5);
    double worst_lin = 0.0;
    for (double lambda : {0.5, 3.0, 7.0, 1000.0}) {
        const double a = paper_poincare(lambda).alpha()(0.5);
        worst_lin = std::max(worst_lin, std::abs(a / (lambda * base) - 1.0));
    }
    m["linearity_max_relative_error"] = worst_lin;
    c.check(worst_lin <= 1e-12, "alpha(lambda C) != lambda alpha(C)");
    const auto o1 = tr::optimize_dyadic_params(1.0, 0.5, 2000);
    const auto o7 = tr::optimize_dyadic_params(7.0, 0.5, 2000);
    c.check(o1.params == o7.params, "argmin depends on C");

    // m1 <= m2  =>  beta1 <= beta2.
    const tr::TailBound m1(tr::GaussianTail{1.0, 1.0});
    const tr::TailBound m2(tr::GaussianTail{1.0, 0.5});
    const auto b1 = tr::tail_to_weak_lsi(1.0, m1).beta();
    const auto b2 = tr::tail_to_weak_lsi(1.0, m2).beta();
    const double lo = std::max(b1.domain_lower(), b2.domain_lower());
    const double hi = std::min(b1.r0(), b2.r0());
    const auto grid_b = log_grid(lo, std::nextafter(hi, 0.0), 1000);
    const bool beta_order = pointwise_le(b1, b2, grid_b);
    m["tail_monotonicity"] = beta_order;
    c.check(beta_order, "beta not monotone in the tail");

    // beta1 <= beta2  =>  alpha1 <= alpha2, for log-power and tail staircases.
    bool alpha_order = true;
    auto compare_alpha = [&](const tr::BetaProfile& x, const tr::BetaProfile& y) {
        const auto ax = tr::weak_lsi_to_weak_poincare(x).alpha();
        const auto ay = tr::weak_lsi_to_weak_poincare(y).alpha();
        const double l = std::max(ax.domain_lower(), ay.domain_lower());
        const double h = std::min(ax.r0(), ay.r0());
        alpha_order = alpha_order && pointwise_le(ax, ay, log_grid(l, std::nextafter(h, 0.0), 1000));
    };
    compare_alpha(tr::BetaProfile::log_rate(1.0, 0.5, 2.0), tr::BetaProfile::log_rate(1.5, 0.5, 2.0));
    compare_alpha(b1, b2);
    m["weak_poincare_monotonicity"] = alpha_order;
    c.check(alpha_order, "alpha not monotone in beta");

    // beta(s)/|log s| -> 4/C.
    auto ratio_range = [&](double a, double C) {
        const auto beta = tr::weighted_lsi_to_weak_lsi({a, C, 1.0}).beta();
        double rmin = INFINITY, rmax = 0.0;
        for (double s : log_grid(1e-30, 1e-20, 1000)) {
            const double r = beta(s) / std::abs(std::log(s)) / (4.0 / C);
            rmin = std::min(rmin, r);
            rmax = std::max(rmax, r);
        }
        return std::pair{rmin, rmax};
    };
    const auto [rmin, rmax] = ratio_range(0.01, 0.1);
    const auto [imin, imax] = ratio_range(1.0, 2.0);
    m["asymptotic_ratio_a0.01_C0.1"] = {rmin, rmax};
    m["asymptotic_ratio_a1_C2_informational"] = {imin, imax};
    c.check(rmin >= 0.8 && rmax <= 1.2, "beta/|log s| outside 4/C (1 +- 0.2)");
    c.r.metrics = m;
    return c.done(t0);
}

// ---------------------------------------------------------------- gaussian

es::CylindricalFunction poly1(std::string name, std::function<double(double)> f, std::function<double(double)> df,
                              double t = 1.0) {
    return es::CylindricalFunction(
        {t}, 1, [f](std::span<const double> x) { return f(x[0]); },
        [df](std::span<const double> x, std::span<double> g) { g[0] = df(x[0]); }, std::move(name));
}

sm::Ensemble gaussian_ensemble(const CriteriaOptions& o, std::size_t n) {
    sm::SamplerConfig cfg;
    cfg.seed = o.seed;
    cfg.n_paths = n;
    cfg.threads = o.threads;
    return sm::sample_gaussian(cfg);
}

CriterionResult a4(const CriteriaOptions& o) {
    const auto t0 = Clock::now();
    Checks c("A4");
    const auto ens = gaussian_ensemble(o, 1000000);
    const std::vector<es::CylindricalFunction> family{
        poly1("H1", [](double x) { return x; }, [](double) { return 1.0; }),
        poly1("H2", [](double x) { return x * x - 1; }, [](double x) { return 2 * x; }),
        poly1("H3", [](double x) { return x * x * x - 3 * x; }, [](double x) { return 3 * x * x - 3; })};
    const auto scan = es::rayleigh_scan(family, ens, es::GreenKernel::for_measure(ens.tag, 1.0));
    const double expected[] = {1.0, 0.5, 1.0 / 3.0};
    json rows = json::array();
    for (std::size_t i = 0; i < 3; ++i) {
        const auto& e = scan.entries[i].ratio;
        rows.push_back({{"name", scan.entries[i].name}, {"ratio", e.value}, {"se", e.std_error}, {"expected", expected[i]}});
        c.check(std::abs(e.value - expected[i]) <= 3 * e.std_error, scan.entries[i].name + " ratio outside 3 SE");
        c.check(e.std_error < 0.01 * e.value, scan.entries[i].name + " SE above 1%");
    }
    c.check(std::abs(scan.best_ratio.value - 1.0) <= 3 * scan.best_ratio.std_error, "best ratio inconsistent with 1");
    const double secs = seconds_since(t0);
    c.check(secs < 30.0, "runtime above 30 s");
    c.r.metrics = {{"ratios", rows}, {"best_ratio", scan.best_ratio.value}, {"runtime_seconds", secs}};
    c.r.detail = "best ratio " + fmt(scan.best_ratio.value) + " +- " + fmt(scan.best_ratio.std_error);
    return c.done(t0);
}

CriterionResult a5(const CriteriaOptions& o) {
    const auto t0 = Clock::now();
    Checks c("A5");
    const auto ens = gaussian_ensemble(o, 1000000);
    const auto G = es::GreenKernel::for_measure(ens.tag, 1.0);
    json rows = json::array();
    for (double lambda : {0.25, 0.5, 1.0}) {
        const auto F = poly1(
            "exp", [lambda](double x) { return std::exp(lambda * x / 2); },
            [lambda](double x) { return lambda / 2 * std::exp(lambda * x / 2); });
        const auto r = es::lsi_ratio(F, ens, G);
        rows.push_back({{"lambda", lambda}, {"ratio", r.value}, {"se", r.std_error}});
        c.check(std::abs(r.value - 2.0) <= 3 * r.std_error, "lambda " + fmt(lambda) + " ratio outside 3 SE of 2");
    }
    c.r.metrics = {{"ratios", rows}};
    return c.done(t0);
}

// ---------------------------------------------------------------- flat bridge

CriterionResult a6(const CriteriaOptions& o) {
    const auto t0 = Clock::now();
    Checks c("A6");
    sm::SamplerConfig cfg;
    cfg.seed = o.seed + 6;
    cfg.n_paths = 100000;
    cfg.grid = sm::TimeGrid::uniform(1.0, 64);
    cfg.threads = o.threads;
    const auto ens = sm::sample_flat_bridge(cfg);
    const std::size_t N = ens.grid.size() - 1;
    bool exact = true;
    for (std::size_t p = 0; p < ens.n_paths; ++p) exact = exact && ens.path(p).point(N)[0] == 0.0 && ens.path(p).point(0)[0] == 0.0;
    c.check(exact, "endpoint not exactly pinned");

    // Known-mean covariance estimator and its standard error, interior nodes.
    const double n = static_cast<double>(ens.n_paths);
    double worst_z = 0.0;
    for (std::size_t i = 1; i < N; ++i) {
        for (std::size_t j = i; j < N; ++j) {
            stats::CompensatedSum s, s2;
            for (std::size_t p = 0; p < ens.n_paths; ++p) {
                const double prod = ens.data[p * ens.stride() + i] * ens.data[p * ens.stride() + j];
                s.add(prod);
                s2.add(prod * prod);
            }
            const double mean = s.value() / n;
            const double se = std::sqrt(std::max(0.0, s2.value() / n - mean * mean) / n);
            const double ti = ens.grid[i], tj = ens.grid[j];
            const double exact_cov = std::min(ti, tj) - ti * tj;
            worst_z = std::max(worst_z, std::abs(mean - exact_cov) / se);
        }
    }
    c.check(worst_z < 4.0, "covariance error " + fmt(worst_z) + " SE");

    const auto F = es::coordinate_function(0.5, 0, 1);
    const auto ratio = es::variance_ratio(es::evaluate(F, ens), es::energies(F, ens, es::GreenKernel::for_measure(ens.tag, 1.0)));
    c.check(std::abs(ratio.value - 1.0) <= 3 * ratio.std_error, "Rayleigh ratio of x(T/2) outside 3 SE of 1");
    const double secs = seconds_since(t0);
    c.check(secs < 60.0, "runtime above 60 s");
    c.r.metrics = {{"max_covariance_z", worst_z}, {"ratio", ratio.value}, {"ratio_se", ratio.std_error},
                   {"runtime_seconds", secs}};
    c.r.detail = "max |cov error| = " + fmt(worst_z) + " SE, ratio " + fmt(ratio.value);
    return c.done(t0);
}

// ---------------------------------------------------------------- OU

CriterionResult a7(const CriteriaOptions& o) {
    const auto t0 = Clock::now();
    Checks c("A7");
    sm::SamplerConfig cfg;
    cfg.seed = o.seed + 7;
    cfg.n_paths = 100000;
    cfg.grid = sm::TimeGrid::uniform(3.0, 60);
    cfg.threads = o.threads;
    const auto ens = sm::sample_ou(cfg);
    double ks = 0.0;
    for (std::size_t k : {std::size_t{0}, std::size_t{30}, std::size_t{60}}) {
        ks = std::max(ks, stats::ks_one_sample(ens.column(k, 0), stats::normal_cdf));
    }
    c.check(ks < 0.01, "stationary KS " + fmt(ks));

    // log Cov(u_0, u_t) against t on [0.5, 3], weighted by inverse variance.
    const auto u0 = ens.column(0, 0);
    std::vector<double> ts, ys, ws;
    for (std::size_t k = 10; k <= 60; k += 5) {
        const auto ut = ens.column(k, 0);
        std::vector<double> prod(u0.size());
        for (std::size_t p = 0; p < prod.size(); ++p) prod[p] = u0[p] * ut[p];
        const auto est = es::mean_of(prod);
        ts.push_back(ens.grid[k]);
        ys.push_back(std::log(est.value));
        const double rel = est.std_error / est.value;
        ws.push_back(1.0 / (rel * rel));
    }
    double sw = 0, st = 0, sy = 0;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        sw += ws[i];
        st += ws[i] * ts[i];
        sy += ws[i] * ys[i];
    }
    const double mt = st / sw, my = sy / sw;
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        sxy += ws[i] * (ts[i] - mt) * (ys[i] - my);
        sxx += ws[i] * (ts[i] - mt) * (ts[i] - mt);
    }
    const double rate = -sxy / sxx;
    c.check(std::abs(rate / 0.5 - 1.0) <= 0.05, "covariance decay rate " + fmt(rate));
    c.r.metrics = {{"ks_max", ks}, {"decay_rate", rate}};
    c.r.detail = "KS " + fmt(ks) + ", decay rate " + fmt(rate);
    return c.done(t0);
}

// ---------------------------------------------------------------- hyperbolic

double mass(double t, int n) {
    const geo::HeatKernelParams p{n};
    boost::math::quadrature::gauss_kronrod<double, 61> gk;
    const double cut = 8.0 + 16.0 * std::sqrt(t) + t;
    const double v = gk.integrate(
        [&](double r) { return geo::unit_sphere_area(n) * geo::heat_kernel(t, r, p) * std::pow(std::sinh(r), n - 1); },
        0.0, cut, 15, 1e-13);
    return v;
}

// int p_s(o, z) p_{t-s}(z, y) dz with d(o, y) = r, in polar coordinates about o.
double chapman_kolmogorov(double s, double t, double r, int n) {
    const geo::HeatKernelParams p{n};
    boost::math::quadrature::gauss_kronrod<double, 31> gk;
    auto inner = [&](double rho) {
        const double pr = geo::heat_kernel(s, rho, p);
        auto at = [&](double cos_theta) {
            const double ch = std::cosh(rho) * std::cosh(r) - std::sinh(rho) * std::sinh(r) * cos_theta;
            return geo::heat_kernel(t - s, std::acosh(std::max(1.0, ch)), p);
        };
        double ang;
        if (n == 3) {
            ang = 2.0 * std::numbers::pi * gk.integrate(at, -1.0, 1.0, 10, 1e-12);
        } else {
            ang = 2.0 * gk.integrate([&](double th) { return at(std::cos(th)); }, 0.0, std::numbers::pi, 10, 1e-12);
        }
        return pr * ang * std::pow(std::sinh(rho), n - 1);
    };
    const double cut = r + 8.0 + 16.0 * std::sqrt(t);
    return gk.integrate(inner, 0.0, cut, 12, 1e-11);
}

CriterionResult a8(const CriteriaOptions&) {
    const auto t0 = Clock::now();
    Checks c("A8");
    double worst_mass = 0.0;
    for (int n : {2, 3})
        for (double t : {0.1, 0.5, 1.0, 2.0}) worst_mass = std::max(worst_mass, std::abs(mass(t, n) - 1.0));
    c.check(worst_mass <= 1e-6, "mass error " + fmt(worst_mass));

    double worst_ck = 0.0;
    for (int n : {3, 2}) {
        const double lhs = chapman_kolmogorov(0.3, 1.0, 0.7, n);
        const double rhs = geo::heat_kernel(1.0, 0.7, {n});
        worst_ck = std::max(worst_ck, std::abs(lhs / rhs - 1.0));
    }
    c.check(worst_ck <= 1e-5, "Chapman-Kolmogorov error " + fmt(worst_ck));

    // Directional derivative of log p along the geodesic away from y0 vs the gradient.
    double worst_fd = 0.0;
    for (int n : {2, 3}) {
        const geo::HeatKernelParams p{n};
        const auto y0 = geo::HPoint::origin(n);
        for (double t : {0.05, 0.2, 1.0, 3.0}) {
            for (double r : {0.05, 0.3, 1.0, 2.5, 5.0}) {
                geo::Ambient dir = geo::Ambient::Zero(n + 1);
                dir[0] = 1.0;
                const auto x = geo::exp_map(y0, r * dir);
                const geo::Ambient u = -geo::log_map(x, y0) / r;
                const double grad = geo::minkowski(geo::grad_log_heat_kernel(t, x, y0, p), u);
                const double h = 1e-5 * std::max(1.0, r);
                const double up = geo::log_heat_kernel(t, geo::dist(geo::exp_map(x, h * u), y0), p);
                const double dn = geo::log_heat_kernel(t, geo::dist(geo::exp_map(x, -h * u), y0), p);
                const double fd = (up - dn) / (2 * h);
                worst_fd = std::max(worst_fd, std::abs(grad - fd) / std::abs(fd));
            }
        }
    }
    c.check(worst_fd <= 1e-5, "gradient FD error " + fmt(worst_fd));
    c.r.metrics = {{"mass_max_error", worst_mass}, {"chapman_kolmogorov_max_error", worst_ck},
                   {"grad_fd_max_relative_error", worst_fd}};
    return c.done(t0);
}

sm::SamplerConfig bridge_config(const CriteriaOptions& o, std::uint64_t salt, std::size_t steps) {
    sm::SamplerConfig cfg;
    cfg.seed = o.seed + salt;
    cfg.n_paths = 100000;
    cfg.dim = 3;
    cfg.grid = sm::TimeGrid::bridge_refined(1.0, steps);
    cfg.threads = o.threads;
    return cfg;
}

double radius(std::span<const double> x) { return std::acosh(std::max(1.0, x[3])); }

double ks_against_increasing_cdf(std::vector<double> x, const std::function<double(double, double)>& piece) {
    // piece(a, b) = F(b) - F(a); accumulated over the sorted sample.
    std::sort(x.begin(), x.end());
    const double n = static_cast<double>(x.size());
    double F = 0.0, prev = 0.0, d = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        F += piece(prev, x[i]);
        prev = x[i];
        d = std::max({d, (i + 1) / n - F, F - i / n});
    }
    return d;
}

CriterionResult a9(const CriteriaOptions& o) {
    const auto t0 = Clock::now();
    Checks c("A9");
    json refine = json::array();
    double prev_gap = INFINITY, prev_cap = INFINITY;
    bool gap_monotone = true, cap_monotone = true;
    for (std::size_t steps : {32, 64, 128}) {
        const auto cfg = bridge_config(o, 90, steps);
        auto diag = sm::for_each_hyperbolic_path(cfg, [](std::size_t, const sm::PathView&, double) {});
        auto g = diag.pre_snap_gap;
        std::nth_element(g.begin(), g.begin() + g.size() / 2, g.end());
        const double median = g[g.size() / 2];
        const double cap_frac = static_cast<double>(diag.drift_cap_events) / static_cast<double>(diag.drift_evaluations);
        gap_monotone = gap_monotone && median < prev_gap;
        cap_monotone = cap_monotone && cap_frac <= prev_cap;
        prev_gap = median;
        prev_cap = cap_frac;
        refine.push_back({{"steps", steps}, {"max_step", cfg.grid.max_step()}, {"median_pre_snap_gap", median},
                          {"drift_cap_fraction", cap_frac}});
    }
    c.check(gap_monotone, "pre-snap gap not decreasing under refinement");
    c.check(cap_monotone, "drift-cap fraction increasing under refinement");

    const auto cfg = bridge_config(o, 91, 256);
    const std::size_t kq = cfg.grid.index_of(0.25), kh = cfg.grid.index_of(0.5), k3 = cfg.grid.index_of(0.75);
    std::vector<double> rq(cfg.n_paths), rh(cfg.n_paths), r3(cfg.n_paths);
    sm::for_each_hyperbolic_path(cfg, [&](std::size_t p, const sm::PathView& v, double) {
        rq[p] = radius(v.point(kq));
        rh[p] = radius(v.point(kh));
        r3[p] = radius(v.point(k3));
    });
    const double ks_rev = stats::ks_two_sample(rq, r3);
    c.check(ks_rev < 0.02, "time-reversal KS " + fmt(ks_rev));

    double ks_marg = 0.0;
    for (auto [t, sample] : {std::pair{0.5, &rh}, std::pair{0.25, &rq}}) {
        const geo::HeatKernelParams p{3};
        const double norm = geo::heat_kernel(1.0, 0.0, p);
        boost::math::quadrature::gauss_kronrod<double, 15> gk;
        auto density = [&, t = t](double rho) {
            return geo::unit_sphere_area(3) * std::sinh(rho) * std::sinh(rho) * geo::heat_kernel(t, rho, p) *
                   geo::heat_kernel(1.0 - t, rho, p) / norm;
        };
        ks_marg = std::max(ks_marg, ks_against_increasing_cdf(*sample, [&](double a, double b) {
                               return b > a ? gk.integrate(density, a, b, 0) : 0.0;
                           }));
    }
    c.check(ks_marg < 0.02, "marginal KS " + fmt(ks_marg));
    const double secs = seconds_since(t0);
    c.check(secs < 300.0, "runtime above 5 min");
    c.r.metrics = {{"refinement", refine}, {"time_reversal_ks", ks_rev}, {"marginal_ks", ks_marg},
                   {"runtime_seconds", secs}};
    c.r.detail = "reversal KS " + fmt(ks_rev) + ", marginal KS " + fmt(ks_marg);
    return c.done(t0);
}

CriterionResult a10(const CriteriaOptions& o) {
    const auto t0 = Clock::now();
    Checks c("A10");
    const auto cfg = bridge_config(o, 100, 64);
    const auto y0 = geo::HPoint::origin(3);
    std::vector<double> u(cfg.n_paths);
    sm::for_each_hyperbolic_path(cfg, [&](std::size_t p, const sm::PathView& v, double) { u[p] = es::sup_distance(v, y0); });
    const es::TailFitOptions topts;
    const auto fit = es::tail_slope_fit(u, topts);
    c.check(fit.upper < 0.0, "tail slope not negative at 99% confidence");

    const double C1 = 1.0, C2 = 1.0;
    const double a = std::sqrt(C2 * cfg.grid.T() / 4.0);
    json m = {{"slope", fit.slope}, {"slope_se", fit.std_error}, {"slope_upper", fit.upper}, {"gradient_bound", a}};
    try {
        const auto tail = tr::aida_transform(es::weight_tail(u, topts), C1, C2);
        const auto wlsi = tr::tail_to_weak_lsi(a, tail);
        const auto wp = tr::weak_lsi_to_weak_poincare(wlsi.beta());
        const auto& alpha = wp.alpha();
        const double hi = std::nextafter(alpha.r0(), 0.0);
        const bool ok = tr::non_increasing_on_log_grid(alpha, alpha.domain_lower(), hi, 1000);
        c.check(ok, "alpha not finite and non-increasing");
        const json blob = {{"tail", tail}, {"weak_lsi", wlsi}, {"weak_poincare", wp}};
        const auto back = blob.at("weak_poincare").get<tr::TransferResult>();
        c.check(back == wp && blob.at("weak_lsi").get<tr::TransferResult>() == wlsi, "audit does not round-trip");
        m["r1"] = alpha.r0();
        m["alpha_at_r1_over_2"] = alpha(alpha.r0() / 2);
        m["alpha_at_grid_lower"] = alpha(alpha.domain_lower());
        m["weak_lsi_audit_entries"] = wlsi.audit.size();
        m["weak_poincare_audit_entries"] = wp.audit.size();
        c.r.metrics = m;
        c.r.detail = "slope " + fmt(fit.slope) + " (upper " + fmt(fit.upper) + "), alpha(r1/2) = " +
                     fmt(alpha(alpha.r0() / 2));
    } catch (const Error& e) {
        c.check(false, std::string("pipeline error: ") + e.what());
        c.r.metrics = m;
    }
    return c.done(t0);
}

}  // namespace

const std::vector<std::string>& criterion_ids() {
    static const std::vector<std::string> ids{"A1", "A2", "A3", "A4", "A5", "A6", "A7", "A8", "A9", "A10"};
    return ids;
}

std::vector<std::string> suite_criteria(std::string_view suite) {
    if (suite == "transfer") return {"A1", "A2", "A3"};
    if (suite == "gaussian") return {"A4", "A5"};
    if (suite == "flat_bridge") return {"A6"};
    if (suite == "ou") return {"A7"};
    if (suite == "hyperbolic") return {"A8", "A9", "A10"};
    if (suite == "all") return criterion_ids();
    throw DataError("unknown suite '" + std::string(suite) + "'");
}

CriterionResult run_criterion(std::string_view id, const CriteriaOptions& opts) {
    static const std::vector<std::pair<std::string, CriterionResult (*)(const CriteriaOptions&)>> table{
        {"A1", a1}, {"A2", a2}, {"A3", a3}, {"A4", a4}, {"A5", a5},
        {"A6", a6}, {"A7", a7}, {"A8", a8}, {"A9", a9}, {"A10", a10}};
    for (const auto& [name, fn] : table) {
        if (name == id) {
            try {
                return fn(opts);
            } catch (const std::exception& e) {
                CriterionResult r;
                r.id = name;
                r.passed = false;
                r.detail = std::string("error: ") + e.what();
                return r;
            }
        }
    }
    throw DataError("unknown criterion '" + std::string(id) + "'");
}

ScenarioResult run_suite(std::string_view suite, const CriteriaOptions& opts) {
    ScenarioResult s;
    s.name = std::string(suite);
    for (const auto& id : suite_criteria(suite)) s.criteria.push_back(run_criterion(id, opts));
    return s;
}

}  // namespace fineq::harness
