#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "fineq/error.hpp"
#include "fineq/estimators/estimators.hpp"
#include "fineq/estimators/tail.hpp"
#include "fineq/sampling/samplers.hpp"
#include "fineq/stats/summation.hpp"
#include "oracles.hpp"

using namespace fineq;
using namespace fineq::estimators;
using namespace fineq::sampling;

namespace {

Ensemble flat(MeasureTag tag, std::size_t paths, double T, std::size_t steps, int dim, std::uint64_t seed) {
    SamplerConfig c;
    c.seed = seed;
    c.n_paths = paths;
    c.dim = dim;
    c.grid = TimeGrid::uniform(T, steps);
    return sample(tag, c);
}

Ensemble hyperbolic(std::size_t paths, std::uint64_t seed) {
    SamplerConfig c;
    c.seed = seed;
    c.n_paths = paths;
    c.dim = 3;
    c.grid = TimeGrid::uniform(1.0, 8);
    c.x0 = {0.2, 0.1, -0.4};
    return sample_hyperbolic_bridge(c);
}

// sin(x_0(t1)) * x_1(t2)^2 + x_0(t2) x_0(t1), analytic gradient included.
CylindricalFunction mixed(double t1, double t2, int D) {
    return CylindricalFunction(
        {t1, t2}, D,
        [D](std::span<const double> x) { return std::sin(x[0]) * x[D + 1] * x[D + 1] + x[D] * x[0]; },
        [D](std::span<const double> x, std::span<double> g) {
            std::fill(g.begin(), g.end(), 0.0);
            g[0] = std::cos(x[0]) * x[D + 1] * x[D + 1] + x[D];
            g[D + 1] = 2 * std::sin(x[0]) * x[D + 1];
            g[D] = x[0];
        },
        "mixed");
}

CylindricalFunction polynomial(const std::vector<double>& coef) {
    return CylindricalFunction(
        {1.0}, 1,
        [coef](std::span<const double> x) {
            double v = 0;
            for (std::size_t k = coef.size(); k-- > 0;) v = v * x[0] + coef[k];
            return v;
        },
        [coef](std::span<const double> x, std::span<double> g) {
            double v = 0;
            for (std::size_t k = coef.size(); k-- > 1;) v = v * x[0] + k * coef[k];
            g[0] = v;
        });
}

}  // namespace

TEST_SUITE("Green kernels") {
    TEST_CASE("values") {
        const GreenKernel bridge{KernelKind::bridge, 2.0}, based{KernelKind::based_path, 2.0},
            point{KernelKind::pointwise, 1.0};
        CHECK(bridge(0.5, 1.5) == doctest::Approx(0.5 - 0.75 / 2));
        CHECK(bridge(1.0, 1.0) == doctest::Approx(0.5));
        CHECK(bridge(2.0, 1.0) == doctest::Approx(0.0).scale(1));
        CHECK(based(0.5, 1.5) == 0.5);
        CHECK(point(0.3, 0.7) == 1.0);
        CHECK(GreenKernel::for_measure(MeasureTag::wiener, 1).kind == KernelKind::based_path);
        CHECK(GreenKernel::for_measure(MeasureTag::hyperbolic_bridge, 1).kind == KernelKind::bridge);
        CHECK(GreenKernel::for_measure(MeasureTag::gaussian, 1).kind == KernelKind::pointwise);
        CHECK(kernel_kind_from("bridge") == KernelKind::bridge);
        CHECK_THROWS_AS(kernel_kind_from("heat"), DataError);
    }

    TEST_CASE("Gram matrices are positive semi-definite") {
        std::mt19937_64 rng(3);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        for (auto kind : {KernelKind::bridge, KernelKind::based_path}) {
            const GreenKernel G{kind, 1.0};
            for (int rep = 0; rep < 50; ++rep) {
                std::vector<double> t(2 + rep % 9);
                for (double& x : t) x = u(rng);
                std::sort(t.begin(), t.end());
                const Eigen::MatrixXd M = G.gram(t);
                CHECK((M - M.transpose()).norm() == 0.0);
                const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M);
                CHECK(es.eigenvalues().minCoeff() >= -1e-12);
            }
        }
    }
}

TEST_SUITE("gradient energy") {
    TEST_CASE("coordinate functions") {
        const auto bridge = flat(MeasureTag::flat_bridge, 3, 2.0, 8, 2, 1);
        const auto G = GreenKernel::for_measure(MeasureTag::flat_bridge, 2.0);
        CHECK(h_gradient_energy(coordinate_function(1.0, 1, 2), bridge.path(0), bridge.tag, G) ==
              doctest::Approx(2.0 / 4));
        const auto wiener = flat(MeasureTag::wiener, 3, 2.0, 8, 1, 1);
        const auto W = GreenKernel::for_measure(MeasureTag::wiener, 2.0);
        CHECK(h_gradient_energy(coordinate_function(2.0, 0, 1), wiener.path(2), wiener.tag, W) == doctest::Approx(2.0));
        const CylindricalFunction constant({0.5}, 1, [](std::span<const double>) { return 3.0; });
        CHECK(h_gradient_energy(constant, wiener.path(0), wiener.tag, W) == 0.0);
    }

    TEST_CASE("sum of two times") {
        const auto w = flat(MeasureTag::wiener, 1, 1.0, 4, 1, 2);
        const CylindricalFunction F(
            {0.25, 0.75}, 1, [](std::span<const double> x) { return x[0] + 2 * x[1]; },
            [](std::span<const double>, std::span<double> g) {
                g[0] = 1;
                g[1] = 2;
            });
        const auto G = GreenKernel::for_measure(MeasureTag::wiener, 1.0);
        // 0.25 + 4 * 0.75 + 2 * 2 * 0.25
        CHECK(h_gradient_energy(F, w.path(0), w.tag, G) == doctest::Approx(4.25));
    }

    TEST_CASE("analytic partials agree with central differences") {
        const auto e = flat(MeasureTag::wiener, 10, 1.0, 8, 3, 3);
        const auto F = mixed(0.25, 0.75, 3);
        const auto Ffd = F.without_gradient();
        CHECK_FALSE(Ffd.has_analytic_gradient());
        for (std::size_t p = 0; p < 10; ++p) {
            const auto a = F.partials(e.path(p), false), b = Ffd.partials(e.path(p), false);
            for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == doctest::Approx(b[i]).epsilon(1e-4).scale(1));
        }
        const auto h = hyperbolic(10, 4);
        const auto H = mixed(0.25, 0.75, 4);
        const auto Hfd = H.without_gradient();
        for (std::size_t p = 0; p < 10; ++p) {
            const auto a = H.partials(h.path(p), true), b = Hfd.partials(h.path(p), true);
            for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == doctest::Approx(b[i]).epsilon(1e-4).scale(1));
        }
    }

    TEST_CASE("transported pairing") {
        const auto e = flat(MeasureTag::flat_bridge, 5, 1.0, 8, 2, 5);
        const auto G = GreenKernel::for_measure(e.tag, 1.0);
        const auto F = mixed(0.25, 0.75, 2);
        for (std::size_t p = 0; p < 5; ++p) {
            const double a = h_gradient_energy(F, e.path(p), e.tag, G);
            const double b = h_gradient_energy(F, e.path(p), e.tag, G, Pairing::transported);
            CHECK(std::abs(a - b) <= 1e-10 * std::max(1.0, a));
        }
        // One time: transport is an isometry, so the energy is G(t, t) |v|^2.
        const auto h = hyperbolic(5, 6);
        const auto H = coordinate_function(0.5, 0, 4);
        const auto HG = GreenKernel::for_measure(h.tag, 1.0);
        for (std::size_t p = 0; p < 5; ++p) {
            const auto v = H.partials(h.path(p), true);
            const double norm2 = v[0] * v[0] + v[1] * v[1] + v[2] * v[2] - v[3] * v[3];
            CHECK(h_gradient_energy(H, h.path(p), h.tag, HG) == doctest::Approx(0.25 * norm2).epsilon(1e-10));
        }
    }

    TEST_CASE("mismatched kernel") {
        const auto e = flat(MeasureTag::wiener, 3, 1.0, 4, 1, 7);
        const GreenKernel bridge{KernelKind::bridge, 1.0};
        CHECK_THROWS_AS(h_gradient_energy(coordinate_function(0.5, 0, 1), e.path(0), e.tag, bridge), DomainError);
        CHECK_THROWS_AS(energies(coordinate_function(0.5, 0, 1), e, bridge), DomainError);
        CHECK_THROWS_AS(coordinate_function(0.3, 0, 1)(e.path(0)), DomainError);
        CHECK_THROWS_AS(coordinate_function(2.0, 0, 1)(e.path(0)), DomainError);
    }
}

TEST_SUITE("moment estimators") {
    TEST_CASE("variance of a bridge midpoint") {
        const auto e = flat(MeasureTag::flat_bridge, 40000, 1.0, 4, 1, 8);
        const auto v = variance(coordinate_function(0.5, 0, 1), e);
        CHECK(v.n_samples == 40000);
        CHECK(std::abs(v.value - 0.25) < 3 * v.std_error);
        const double plain = variance_of(e.column(2, 0)).value;
        CHECK(plain == v.value);
    }

    TEST_CASE("entropy of a squared standard normal") {
        const auto e = flat(MeasureTag::gaussian, 100000, 1.0, 1, 1, 9);
        const auto ent = entropy(coordinate_function(1.0, 0, 1), e);
        const double exact = 2 - std::numbers::egamma - std::log(2.0);
        CHECK(std::abs(ent.value - exact) < 4 * ent.std_error);
        CHECK(ent.method == Method::jackknife);
    }

    TEST_CASE("small closed-form samples") {
        const std::vector<double> x{1, -1, 2, -2};
        CHECK(mean_of(x).value == 0.0);
        CHECK(variance_of(x).value == doctest::Approx(10.0 / 3));
        // g = 1, 1, 4, 4; mean 2.5.
        const double ent = (2 * std::log(1 / 2.5) + 8 * std::log(4 / 2.5)) / 4;
        CHECK(entropy_of_square(x).value == doctest::Approx(ent).epsilon(1e-14));
        const std::vector<double> zero_one{0, 0, 0, 1};
        CHECK(entropy_of_square(zero_one).value == doctest::Approx(std::log(4.0) / 4).epsilon(1e-14));
    }

    TEST_CASE("entropy invariances") {
        std::mt19937_64 rng(10);
        std::normal_distribution<double> g;
        std::vector<double> x(2000);
        for (double& v : x) v = g(rng) + 0.3;
        const double base = entropy_of_square(x).value;
        std::vector<double> scaled = x, flipped = x, shuffled = x;
        for (double& v : scaled) v *= 3;
        for (double& v : flipped) v = -v;
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        CHECK(entropy_of_square(scaled).value == doctest::Approx(9 * base).epsilon(1e-12));
        CHECK(entropy_of_square(flipped).value == base);
        CHECK(entropy_of_square(shuffled).value == doctest::Approx(base).epsilon(1e-12));
        CHECK(base >= 0);
        const std::vector<double> constant(100, 2.0);
        CHECK(entropy_of_square(constant).value == doctest::Approx(0.0).scale(1));
    }

    TEST_CASE("ratios are non-negative and Gaussian polynomials obey the Poincare bound") {
        const auto e = flat(MeasureTag::gaussian, 50000, 1.0, 1, 1, 11);
        const auto G = GreenKernel::for_measure(e.tag, 1.0);
        std::mt19937_64 rng(12);
        std::normal_distribution<double> g;
        std::vector<CylindricalFunction> family;
        for (int k = 0; k < 20; ++k) {
            std::vector<double> coef(1 + k % 4 + 1);
            for (double& c : coef) c = g(rng);
            family.push_back(polynomial(coef));
        }
        const auto scan = rayleigh_scan(family, e, G);
        REQUIRE(scan.entries.size() == 20);
        for (const auto& en : scan.entries) {
            CHECK(en.ratio.value >= 0);
            CHECK(en.variance.value >= 0);
            CHECK(en.energy.value > 0);
            CHECK(en.ratio.value <= scan.best_ratio.value);
        }
        CHECK(scan.best_ratio.value <= 1 + 4 * scan.best_ratio.std_error);
        CHECK(scan.entries[scan.best_index].ratio.value == scan.best_ratio.value);
        // Linear functions attain the constant.
        const auto lin = rayleigh_scan(std::vector{polynomial({0.5, 2.0})}, e, G);
        CHECK(lin.best_ratio.value == doctest::Approx(1.0).epsilon(0.02));
        CHECK(lsi_ratio(polynomial({0.5, 2.0}), e, G).value >= 0);
    }

    TEST_CASE("exp-square moments") {
        std::mt19937_64 rng(13);
        std::normal_distribution<double> g;
        std::vector<double> u(100000);
        for (double& v : u) v = g(rng);
        const auto m = exp_square_moment(u, 0.1);
        CHECK_FALSE(m.dominated);
        CHECK(std::abs(m.estimate.value - 1 / std::sqrt(0.8)) < 4 * m.estimate.std_error);
        CHECK(m.log_value == doctest::Approx(std::log(m.estimate.value)));
        std::vector<double> spike(1000, 0.0);
        spike[17] = 30;
        const auto d = exp_square_moment(spike, 1.0);
        CHECK(d.dominated);
        CHECK(d.max_share == doctest::Approx(1.0));
        CHECK(std::isfinite(d.log_value));
        CHECK(d.log_value == doctest::Approx(900 - std::log(1000.0)).epsilon(1e-12));
    }

    TEST_CASE("compensated summation is order-insensitive") {
        std::mt19937_64 rng(14);
        std::uniform_real_distribution<double> u(-1, 1);
        std::vector<double> x;
        for (int i = 0; i < 10000; ++i) x.push_back(u(rng) * std::pow(10.0, i % 12));
        x.push_back(1e16);
        x.push_back(-1e16);
        const double fwd = stats::compensated_sum(x);
        std::reverse(x.begin(), x.end());
        const double rev = stats::compensated_sum(x);
        std::shuffle(x.begin(), x.end(), rng);
        const double shuf = stats::compensated_sum(x);
        CHECK(std::abs(fwd - rev) <= 1e-4);
        CHECK(std::abs(fwd - shuf) <= 1e-4);
        stats::CompensatedSum a, b;
        for (std::size_t i = 0; i < x.size(); ++i) (i % 2 ? a : b).add(x[i]);
        a.merge(b);
        CHECK(std::abs(a.value() - shuf) <= 1e-4);
        const std::vector<double> classic{1.0, 1e100, 1.0, -1e100};
        CHECK(stats::compensated_sum(classic) == 2.0);
    }

    TEST_CASE("degenerate inputs") {
        const auto one = flat(MeasureTag::wiener, 1, 1.0, 4, 1, 15);
        CHECK_THROWS_AS(variance(coordinate_function(1.0, 0, 1), one), DataError);
        const std::vector<double> zeros(10, 0.0);
        CHECK_THROWS_AS(entropy_of_square(zeros), DataError);
        CHECK_THROWS_AS(variance_ratio(zeros, zeros), DataError);
        const std::vector<double> three{1, 2, 3};
        CHECK_THROWS_AS(variance_ratio(three, zeros), DataError);
        CHECK_THROWS_AS(variance_of(std::vector<double>{1.0}), DataError);
        CHECK_THROWS_AS(mean_of(std::vector<double>{1.0, std::nan("")}), DataError);
        CHECK_THROWS_AS(rayleigh_scan({}, one, GreenKernel::for_measure(one.tag, 1.0)), DomainError);
        CHECK_THROWS_AS(exp_square_moment(three, std::numeric_limits<double>::infinity()), DomainError);
    }
}

TEST_SUITE("weight tails") {
    TEST_CASE("Clopper-Pearson against bisection") {
        for (auto [k, n] : std::vector<std::pair<int, int>>{{0, 10}, {3, 10}, {17, 200}, {150, 1000}, {999, 1000}})
            for (double conf : {0.9, 0.99})
                CHECK(clopper_pearson_upper(k, n, conf) ==
                      doctest::Approx(oracle::clopper_pearson_upper(k, n, conf)).epsilon(1e-9));
        CHECK(clopper_pearson_upper(0, 10, 0.99) == doctest::Approx(1 - std::pow(0.01, 0.1)).epsilon(1e-12));
        CHECK(clopper_pearson_upper(10, 10, 0.99) == 1.0);
        CHECK_THROWS_AS(clopper_pearson_upper(11, 10, 0.99), DomainError);
        CHECK_THROWS_AS(clopper_pearson_upper(1, 10, 1.0), DomainError);
    }

    TEST_CASE("empirical bound of a half-normal sample") {
        std::mt19937_64 rng(16);
        std::normal_distribution<double> g;
        std::vector<double> u(50000);
        for (double& v : u) v = std::abs(g(rng));
        const auto m = weight_tail(u);
        REQUIRE(m.is_empirical());
        CHECK(m(0.0) == 1.0);
        double prev = 1.0;
        for (double s = 0; s < 8; s += 0.01) {
            CHECK(m(s) <= prev);
            prev = m(s);
            CHECK(m(s) >= 0.0);
        }
        // An upper confidence bound: it should cover the true survival on the data range.
        for (double s : {0.5, 1.0, 2.0, 3.0}) CHECK(m(s) >= 2 * (1 - oracle::normal_cdf(s)) * 0.98);
        const auto& emp = std::get<transfer::EmpiricalTail>(m.family());
        REQUIRE(emp.extrapolation.has_value());
        CHECK(emp.extrapolation->kappa > 0);
        CHECK(emp.extrapolation->kappa < 0.5 * 1.2);
        const auto fit = tail_slope_fit(u);
        CHECK(fit.slope < 0);
        CHECK(fit.upper < 0);
        CHECK(fit.slope == doctest::Approx(-0.5).epsilon(0.2));
        CHECK(fit.points >= 3);
    }

    TEST_CASE("sup distance") {
        const auto h = hyperbolic(20, 17);
        const auto y0 = geometry::HPoint::from_spatial(Eigen::Vector3d(0.2, 0.1, -0.4));
        const auto u = sup_distance(h, y0);
        REQUIRE(u.size() == 20);
        for (std::size_t p = 0; p < 20; ++p) {
            double best = 0;
            const auto path = h.path(p);
            for (std::size_t k = 0; k < path.size(); ++k) {
                const auto q = path.point(k);
                const std::vector<double> a(q.begin(), q.end()), b{y0[0], y0[1], y0[2], y0[3]};
                best = std::max(best, std::acosh(std::max(1.0, -oracle::mink(a, b))));
            }
            CHECK(u[p] == doctest::Approx(best).epsilon(1e-8).scale(1e-8));
        }
        const auto flat_e = flat(MeasureTag::wiener, 100, 1.0, 4, 3, 1);
        CHECK_THROWS_AS(weight_tail(flat_e, y0), DomainError);
        CHECK_THROWS_AS(weight_tail(std::vector<double>{1.0, -1.0, 2.0}), DataError);
    }
}
