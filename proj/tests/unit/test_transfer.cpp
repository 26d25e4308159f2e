#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "fineq/error.hpp"
#include "fineq/transfer/entropy_check.hpp"
#include "fineq/transfer/serialization.hpp"
#include "fineq/transfer/transfers.hpp"
#include "fineq/transfer/weak_poincare.hpp"
#include "oracles.hpp"

using namespace fineq;
using namespace fineq::transfer;

namespace {

std::vector<double> log_grid(double lo, double hi, int n) {
    std::vector<double> g(n);
    for (int i = 0; i < n; ++i)
        g[i] = i == 0 ? lo : i + 1 == n ? hi : std::exp(std::log(lo) + (std::log(hi) - std::log(lo)) * i / (n - 1));
    return g;
}

const DyadicParams kHandPicked = DyadicParams::from_pow2(4.5, 0.5, 0.125);
const oracle::Dyadic kHandPickedOracle{std::pow(2.0, 4.5), std::sqrt(2.0), 0.125};

}  // namespace

TEST_SUITE("weighted certificate") {
    TEST_CASE("threshold at b(3) selects level 3") {
        const WeightedLSICertificate cert{1, 2, 1};
        const auto beta = weighted_lsi_to_weak_lsi(cert).beta();
        const double b3 = oracle::b(1, 2, 1, 3);
        CHECK(weighted_level(cert, 3) == doctest::Approx(b3).epsilon(1e-15));
        CHECK(beta(b3) == 18.0);
        CHECK(beta(b3 * (1 - 1e-9)) == 32.0);
    }

    TEST_CASE("brute-force level scan with M = 2") {
        const auto beta = weighted_lsi_to_weak_lsi({1, 1, 2}).beta();
        const int n = oracle::weighted_n(1, 1, 2, 1e-6);
        REQUIRE(n > 0);
        CHECK(beta(1e-6) == 2.0 * n * n);
    }

    TEST_CASE("first decreasing level agrees with a direct scan") {
        for (double a : {0.01, 0.5, 1.0, 3.0})
            for (double C : {0.1, 0.5, 1.0, 2.0, 7.0}) {
                CAPTURE(a);
                CAPTURE(C);
                const WeightedLSICertificate cert{a, C, 1};
                const int n_min = weighted_first_level(cert);
                CHECK(n_min >= oracle::first_decreasing_level(a, C, 1));
                for (int k = n_min; k < n_min + 50; ++k)
                    CHECK(oracle::log_b(a, C, 1, k + 1) < oracle::log_b(a, C, 1, k));
                const auto beta = weighted_lsi_to_weak_lsi(cert).beta();
                CHECK(beta.r0() == weighted_level(cert, n_min));
            }
    }

    TEST_CASE("audit records the probed levels") {
        const auto res = weighted_lsi_to_weak_lsi({1, 2, 1});
        CHECK(audit_value(res.audit, "b(3)") == doctest::Approx(oracle::b(1, 2, 1, 3)).epsilon(1e-15));
        CHECK(audit_value(res.audit, "n_min") == 2.0);
        CHECK(audit_value(res.audit, "r0") == res.beta().r0());
        CHECK(audit_value(res.audit, "M") == 1.0);
    }

    TEST_CASE("invalid certificates are rejected") {
        CHECK_THROWS_AS(weighted_lsi_to_weak_lsi({1, 2, 0.5}), DomainError);
        CHECK_THROWS_AS(weighted_lsi_to_weak_lsi({std::nan(""), 2, 1}), DomainError);
        CHECK_THROWS_AS(weighted_lsi_to_weak_lsi({1, std::numeric_limits<double>::infinity(), 1}), DomainError);
        CHECK_THROWS_AS(weighted_lsi_to_weak_lsi({0, 2, 1}), DomainError);
        CHECK_THROWS_AS(weighted_lsi_to_weak_lsi({1, -1, 1}), DomainError);
    }

    TEST_CASE("beta is positive and non-increasing on its domain") {
        for (auto cert : {WeightedLSICertificate{1, 2, 1}, WeightedLSICertificate{0.1, 0.3, 4},
                          WeightedLSICertificate{2, 5, 1.5}}) {
            for (bool smooth : {false, true}) {
                const auto beta = weighted_lsi_to_weak_lsi(cert, {smooth}).beta();
                const double lo = smooth ? 1e-200 : beta.domain_lower();
                CHECK(non_increasing_on_log_grid(beta, lo, std::nextafter(beta.r0(), 0.0), 1000));
            }
        }
    }

    TEST_CASE("smooth variant stays below the staircase") {
        const WeightedLSICertificate cert{1, 2, 1};
        const auto stair = weighted_lsi_to_weak_lsi(cert).beta();
        const auto smooth = weighted_lsi_to_weak_lsi(cert, {true}).beta();
        for (double s : log_grid(stair.domain_lower(), std::nextafter(stair.r0(), 0.0), 300)) {
            CHECK(smooth(s) <= stair(s) * (1 + 1e-12));
            CHECK(weighted_level(cert, std::sqrt(smooth(s) / 2)) == doctest::Approx(s).epsilon(1e-8));
        }
    }

    TEST_CASE("asymptotic slope 4/C") {
        const auto beta = weighted_lsi_to_weak_lsi({0.01, 0.1, 1}).beta();
        for (double s : log_grid(1e-30, 1e-20, 1000)) {
            const double ratio = beta(s) / std::abs(std::log(s)) / (4 / 0.1);
            CHECK(ratio >= 0.8);
            CHECK(ratio <= 1.2);
        }
    }
}

TEST_SUITE("tail certificate") {
    TEST_CASE("first level qualifies just above its threshold") {
        const TailBound m(GaussianTail{1, 1});
        const auto beta = tail_to_weak_lsi(1, m).beta();
        const double level1 = oracle::kOffset + 4;  // m(0) = 1
        CHECK(tail_level(1, m, 1) == doctest::Approx(level1).epsilon(1e-15));
        CHECK(beta(level1 * (1 + 1e-12)) == 2.0);
    }

    TEST_CASE("tail levels follow the independent scan") {
        const TailBound m(GaussianTail{1, 1});
        const auto beta = tail_to_weak_lsi(1, m).beta();
        auto mf = [](double s) { return std::min(1.0, std::exp(-s * s)); };
        for (double s : {4.0, 1.0, 0.1, 1e-3, 1e-8, 1e-40}) {
            const int n = oracle::tail_n(1, mf, s);
            REQUIRE(n > 0);
            CHECK(beta(s) == 2.0 * n * n);
        }
    }

    TEST_CASE("no decay is an explicit error") {
        const TailBound flat(ConstantTail{1.0});
        try {
            tail_to_weak_lsi(1, flat);
            FAIL("expected an error");
        } catch (const InfeasibleError& e) {
            CHECK(std::string(e.what()).find("no weak-LSI derivable") != std::string::npos);
        }
        CHECK_THROWS_AS(tail_to_weak_lsi(0, TailBound(GaussianTail{1, 1})), DomainError);
    }

    TEST_CASE("empirical tail against a direct scan") {
        std::mt19937_64 rng(5);
        std::normal_distribution<double> g;
        std::vector<double> s{0, 0.5, 1, 1.5, 2, 2.5, 3}, m;
        for (double x : s) m.push_back(std::min(1.0, 1.2 * std::exp(-0.8 * x * x)));
        EmpiricalTail emp{s, m, 100000, 0.99, GaussianExtrapolation{3.0, m.back(), 0.8}};
        const TailBound tail(emp);
        const auto beta = tail_to_weak_lsi(0.5, tail).beta();
        auto mf = [&](double x) { return tail(x); };
        const int n = oracle::tail_n(0.5, mf, 1e-3);
        REQUIRE(n > 0);
        CHECK(beta(1e-3) == 2.0 * n * n);
    }

    TEST_CASE("monotone in the tail bound") {
        const auto b1 = tail_to_weak_lsi(1, TailBound(GaussianTail{1, 1})).beta();
        const auto b2 = tail_to_weak_lsi(1, TailBound(GaussianTail{2, 0.5})).beta();
        const double lo = std::max(b1.domain_lower(), b2.domain_lower());
        const double hi = std::min(b1.r0(), b2.r0());
        for (double s : log_grid(lo, std::nextafter(hi, 0.0), 1000)) CHECK(b1(s) <= b2(s));
    }

    TEST_CASE("Aida transform of a Gaussian tail") {
        const TailBound inner(GaussianTail{1, 2});
        const auto u = aida_transform(inner, 1.0, 4.0);
        CHECK(u(0.5) == 1.0);
        const double s = 3.0;
        CHECK(u(s) == doctest::Approx(std::exp(-2 * (s * s - 1) / 4)).epsilon(1e-14));
    }
}

TEST_SUITE("dyadic constants") {
    TEST_CASE("hand-picked parameters") {
        CHECK(kHandPicked.A() == 9.0);
        CHECK(c2(kHandPicked, 1.0) == doctest::Approx(13.0).epsilon(1e-15));
        CHECK(c3(kHandPicked) == doctest::Approx(oracle::c3(kHandPickedOracle)).epsilon(1e-13));
        CHECK(c3(kHandPicked) < 1.0);
        CHECK(c1(kHandPicked, 1.0) == doctest::Approx(oracle::c1(kHandPickedOracle, 1.0)).epsilon(1e-13));
    }

    TEST_CASE("c1 and c2 are homogeneous in C") {
        for (double C : {0.3, 1.0, 2.5, 1e3}) {
            CHECK(c1(kHandPicked, 2 * C) == 2 * c1(kHandPicked, C));
            CHECK(c2(kHandPicked, 2 * C) == 2 * c2(kHandPicked, C));
        }
    }

    TEST_CASE("Poincare constant at the hand-picked point") {
        const auto res = weak_lsi_to_poincare(BetaProfile::log_rate(1, 0.5), kHandPicked);
        const double alpha = res.alpha()(0.1);
        CHECK(res.alpha().is_constant());
        CHECK(alpha == doctest::Approx(oracle::poincare(kHandPickedOracle, 1.0)).epsilon(1e-13));
        CHECK(std::abs(alpha / 40.82 - 1) <= 0.10);
        CHECK(audit_value(res.audit, "A") == 9.0);
        CHECK(audit_value(res.audit, "alpha_split_factor_two") == 2 * alpha);
        for (int n = 0; n < 10; ++n) CHECK(audit_value(res.audit, "r(" + std::to_string(n) + ")") < 0.5);
    }

    TEST_CASE("alpha is exactly linear in C") {
        const double a1 = weak_lsi_to_poincare(BetaProfile::log_rate(1, 0.5), kHandPicked).alpha()(0.1);
        for (double lambda : {2.0, 0.5, 3.0, 7.0, 1e3}) {
            const double al = weak_lsi_to_poincare(BetaProfile::log_rate(lambda, 0.5), kHandPicked).alpha()(0.1);
            CHECK(std::abs(al / (lambda * a1) - 1) <= 1e-12);
        }
    }

    TEST_CASE("infeasible parameters name the violated constraint") {
        const auto beta = BetaProfile::log_rate(1, 0.5);
        auto constraint_of = [&](DyadicParams p) {
            try {
                weak_lsi_to_poincare(beta, p);
            } catch (const InfeasibleError& e) {
                return e.constraint();
            }
            return std::string("none");
        };
        CHECK(constraint_of(DyadicParams::from_values(4, 2, 0.125)) == "C3 < 1");
        CHECK(constraint_of(DyadicParams::from_values(1.5, 2, 0.125)).find("A") != std::string::npos);
        CHECK(constraint_of(DyadicParams::from_values(30, 1.2, 1.5)) == "0 < epsilon < 1");
        CHECK(constraint_of(DyadicParams::from_values(1.2, 0.9, 0.1)) == "delta > 1");
        CHECK(constraint_of(kHandPicked) == "none");
        CHECK_THROWS_AS(weak_lsi_to_poincare(BetaProfile::log_rate(1, 0.5, 2.0), kHandPicked), DomainError);
    }

    TEST_CASE("optimizer dominates the hand-picked point and is C-invariant") {
        const auto o1 = optimize_dyadic_params(1, 0.5, 10000);
        const double paper = oracle::poincare(kHandPickedOracle, 1.0);
        CHECK(o1.objective <= paper * (1 + 1e-6));
        CHECK_FALSE(violated_constraint(o1.params, 0.5).has_value());
        CHECK(c3(o1.params) < 1.0);
        CHECK(o1.params.schedule_r(0) < 0.5);
        CHECK(o1.evaluations <= 10000);
        const auto o7 = optimize_dyadic_params(7, 0.5, 10000);
        CHECK(o7.params == o1.params);
        const auto again = optimize_dyadic_params(1, 0.5, 10000);
        CHECK(again.params == o1.params);
        CHECK(again.objective == o1.objective);
        const auto automatic = weak_lsi_to_poincare(BetaProfile::log_rate(1, 0.5));
        CHECK(automatic.alpha()(0.1) == o1.objective);
    }

    TEST_CASE("Poincare transfer reproduces the oracle at the optimum") {
        const auto o = optimize_dyadic_params(1, 0.5, 10000);
        const oracle::Dyadic od{o.params.delta0(), o.params.delta(), o.params.epsilon};
        CHECK(o.objective == doctest::Approx(oracle::poincare(od, 1.0)).epsilon(1e-10));
    }
}

TEST_SUITE("log-rate envelope") {
    TEST_CASE("envelope dominates the staircase") {
        const auto stair = weighted_lsi_to_weak_lsi({0.01, 0.1, 1}).beta();
        const auto env = log_rate_envelope(stair, 0.5).beta();
        for (double s : log_grid(stair.domain_lower(), std::nextafter(0.5, 0.0), 1000)) CHECK(stair(s) <= env(s));
        const auto alpha = weak_lsi_to_poincare(env);
        CHECK(std::isfinite(alpha.alpha()(0.1)));
    }
    TEST_CASE("envelope domain errors") {
        const auto stair = weighted_lsi_to_weak_lsi({1, 2, 1}).beta();
        CHECK_THROWS_AS(log_rate_envelope(stair, 1.5), DomainError);
        CHECK_THROWS_AS(log_rate_envelope(stair, stair.domain_lower() / 2), InfeasibleError);
    }
}

TEST_SUITE("weak Poincare") {
    TEST_CASE("constant beta specialises the displayed formula") {
        const double K = 5.0;
        const BetaProfile beta(Tabulated{{1e-300}, {K}}, 0.5);
        const auto res = weak_lsi_to_weak_poincare(beta);
        const auto params = WeakPoincareConstruction::choose_params(0.5);
        const WeakPoincareConstruction wp(beta, params);
        const double c1p = audit_value(res.audit, "C1_prime");
        CHECK(c1p == wp.c1_prime());
        for (double s : log_grid(1e-10, 0.9 * wp.r1(), 50))
            CHECK(wp.displayed_alpha(s) == doctest::Approx(K / (c1p * std::log(1 / s))).epsilon(1e-14));
        // Every table entry is the best bound available at or below its s.
        const auto& tab = std::get<Tabulated>(res.alpha().family());
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < tab.s.size(); ++j) {
            best = std::min(best, std::max(wp.displayed_alpha(tab.s[j]), wp.constructive_alpha(tab.s[j])));
            CHECK(tab.value[j] == best);
        }
        CHECK(non_increasing_on_log_grid(res.alpha(), res.alpha().domain_lower(), std::nextafter(res.alpha().r0(), 0.0)));
    }

    TEST_CASE("displayed formula with audited constants") {
        const auto beta = BetaProfile::log_rate(1, 0.5, 2.0);
        const auto res = weak_lsi_to_weak_poincare(beta);
        const double c1p = audit_value(res.audit, "C1_prime");
        const double c2p = audit_value(res.audit, "C2_prime");
        const WeakPoincareParams params{audit_value(res.audit, "delta0"), audit_value(res.audit, "delta"),
                                        audit_value(res.audit, "r")};
        const WeakPoincareConstruction wp(beta, params);
        const double s = 1e-4;
        const double L = std::log(1 / s);
        const double expected = std::pow(std::log(1 / (c2p * s * L)), 2) / (c1p * L);
        CHECK(wp.displayed_alpha(s) == doctest::Approx(expected).epsilon(1e-13));
        CHECK(res.alpha()(s) >= std::min(wp.displayed_alpha(s), wp.constructive_alpha(s)) * (1 - 1e-12));
    }

    TEST_CASE("ordering of beta carries over to alpha") {
        const auto a1 = weak_lsi_to_weak_poincare(BetaProfile::log_rate(1, 0.5, 2.0)).alpha();
        const auto a2 = weak_lsi_to_weak_poincare(BetaProfile::log_rate(1.5, 0.5, 2.0)).alpha();
        const double lo = std::max(a1.domain_lower(), a2.domain_lower());
        const double hi = std::nextafter(std::min(a1.r0(), a2.r0()), 0.0);
        for (double s : log_grid(lo, hi, 1000)) CHECK(a1(s) <= a2(s));
    }

    TEST_CASE("s outside the domain") {
        const auto a = weak_lsi_to_weak_poincare(BetaProfile::log_rate(1, 0.5, 2.0)).alpha();
        CHECK_THROWS_AS(a(a.r0()), DomainError);
        CHECK_THROWS_AS(a(0.0), DomainError);
        CHECK_THROWS_AS(a(-1.0), DomainError);
    }

    TEST_CASE("constructor validates the parameters") {
        const auto beta = BetaProfile::log_rate(1, 0.5, 2.0);
        CHECK_THROWS(WeakPoincareConstruction(beta, {4.0, 1.0, 0.01}));
        CHECK_THROWS(WeakPoincareConstruction(beta, {1.5, 2.0, 0.01}));
        CHECK_THROWS(WeakPoincareConstruction(beta, {20.0, 1.5, 0.9}));
    }

    TEST_CASE("tail staircase through to a weak Poincare profile") {
        const auto wlsi = tail_to_weak_lsi(1, TailBound(GaussianTail{1, 1}));
        const auto res = weak_lsi_to_weak_poincare(wlsi.beta());
        const auto& a = res.alpha();
        CHECK(non_increasing_on_log_grid(a, a.domain_lower(), std::nextafter(a.r0(), 0.0), 1000));
    }
}

TEST_SUITE("entropy check") {
    TEST_CASE("indicator of half the sample with phi = log 2") {
        std::vector<double> G(1000, 0.0);
        std::vector<unsigned char> support(1000, 0);
        for (int i = 0; i < 500; ++i) {
            G[i] = 1.0;
            support[i] = 1;
        }
        const auto r = entropy_inequality_check(G, {2.0, support});
        CHECK(r.lhs == doctest::Approx(0.5 * std::numbers::ln2).epsilon(1e-14));
        CHECK(r.rhs == doctest::Approx(0.5 * std::numbers::ln2).epsilon(1e-14));
        CHECK(r.exp_mean == doctest::Approx(1.0));
        CHECK(entropy_inequality_check(G, {2.0, support}, 1e-12).holds);
    }

    TEST_CASE("constant G with phi = 0") {
        std::vector<double> G(100, 3.0);
        std::vector<unsigned char> support(100, 1);
        const auto r = entropy_inequality_check(G, {1.0, support});
        CHECK(r.lhs == 0.0);
        CHECK(r.rhs == doctest::Approx(0.0).epsilon(1e-14));
        CHECK(entropy_inequality_check(G, {1.0, support}, 1e-12).holds);
    }

    TEST_CASE("random G against exhaustive evaluation") {
        std::mt19937_64 rng(17);
        std::exponential_distribution<double> ex;
        std::bernoulli_distribution coin(0.25);
        for (int rep = 0; rep < 20; ++rep) {
            std::vector<double> G(1000);
            std::vector<unsigned char> sup(1000);
            int count = 0;
            for (int i = 0; i < 1000; ++i) {
                sup[i] = coin(rng);
                G[i] = sup[i] || rep % 2 ? ex(rng) : 0.0;
                count += sup[i];
            }
            const double level = rep % 2 ? 1.0 : 1000.0 / count * (1 - 1e-12);
            if (rep % 2) std::fill(sup.begin(), sup.end(), 1);
            double mean_g2 = 0;
            for (double g : G) mean_g2 += g * g / 1000;
            double lhs = 0, rhs = 0;
            for (int i = 0; i < 1000; ++i) {
                const double g2 = G[i] * G[i];
                if (sup[i]) lhs += g2 * std::log(level) / 1000;
                rhs += g2 > 0 ? g2 * std::log(g2 / mean_g2) / 1000 : 0;
            }
            const auto r = entropy_inequality_check(G, {level, sup});
            CHECK(r.lhs == doctest::Approx(lhs).epsilon(1e-12).scale(1e-12));
            CHECK(r.rhs == doctest::Approx(rhs).epsilon(1e-12));
            CHECK(r.holds == (lhs <= rhs));
            CHECK(r.holds);
        }
    }

    TEST_CASE("invalid potentials and data") {
        std::vector<double> G(10, 1.0);
        std::vector<unsigned char> sup(10, 1);
        CHECK_THROWS_AS(entropy_inequality_check(G, {2.0, sup}), DomainError);
        std::vector<unsigned char> short_sup(5, 1);
        CHECK_THROWS_AS(entropy_inequality_check(G, {1.0, short_sup}), DataError);
        std::vector<unsigned char> none(10, 0);
        std::vector<double> G2(10, 0.0);
        G2[0] = 1.0;
        std::vector<unsigned char> one(10, 0);
        one[0] = 1;
        const auto r = entropy_inequality_check(G2, {10.0, one});
        CHECK(r.lhs == doctest::Approx(0.1 * std::log(10.0)).epsilon(1e-14));
        CHECK(r.rhs == doctest::Approx(0.1 * std::log(10.0)).epsilon(1e-14));
        one[0] = 0;
        one[1] = 1;
        CHECK(entropy_inequality_check(G2, {10.0, one}).lhs == -std::numeric_limits<double>::infinity());
        CHECK(entropy_inequality_check(G, {10.0, none}).lhs == -std::numeric_limits<double>::infinity());
    }
}

TEST_SUITE("profiles and serialization") {
    TEST_CASE("transfers are pure") {
        CHECK(weighted_lsi_to_weak_lsi({1, 2, 1}) == weighted_lsi_to_weak_lsi({1, 2, 1}));
        CHECK(tail_to_weak_lsi(1, TailBound(GaussianTail{1, 1})) == tail_to_weak_lsi(1, TailBound(GaussianTail{1, 1})));
        const auto b = BetaProfile::log_rate(1, 0.5, 2.0);
        CHECK(weak_lsi_to_weak_poincare(b) == weak_lsi_to_weak_poincare(b));
    }

    TEST_CASE("JSON round trip is lossless") {
        std::vector<TransferResult> results{
            weighted_lsi_to_weak_lsi({1, 2, 1}),
            weighted_lsi_to_weak_lsi({1, 2, 1}, {true}),
            tail_to_weak_lsi(1, TailBound(GaussianTail{1, 1})),
            tail_to_weak_lsi(1, aida_transform(TailBound(GaussianTail{1, 1}), 1, 1)),
            weak_lsi_to_poincare(BetaProfile::log_rate(1, 0.5), kHandPicked),
            weak_lsi_to_weak_poincare(BetaProfile::log_rate(1, 0.5, 2.0)),
        };
        for (const auto& r : results) {
            const nlohmann::json j = r;
            CHECK(j.at("schema_version") == kTransferSchemaVersion);
            const auto back = nlohmann::json::parse(j.dump()).get<TransferResult>();
            CHECK(back == r);
            CHECK(!back.audit.empty());
        }
        const TailBound emp(EmpiricalTail{{0, 1, 2}, {1, 0.5, 0.1}, 100, 0.99, GaussianExtrapolation{2, 0.1, 0.7}});
        const nlohmann::json jt = emp;
        CHECK(nlohmann::json::parse(jt.dump()).get<TailBound>() == emp);
    }

    TEST_CASE("schema version is enforced") {
        nlohmann::json j = weighted_lsi_to_weak_lsi({1, 2, 1});
        j["schema_version"] = 99;
        CHECK_THROWS(j.get<TransferResult>());
    }

    TEST_CASE("profile repertoire") {
        const BetaProfile lr = BetaProfile::log_rate(2, 0.5);
        CHECK(lr(0.25) == doctest::Approx(2 * std::log(4.0)));
        CHECK_THROWS_AS(lr(0.5), DomainError);
        const BetaProfile tab(Tabulated{{1e-5, 1e-3, 1e-1}, {9, 5, 2}}, 0.5);
        CHECK(tab(1e-5) == 9);
        CHECK(tab(2e-3) == 5);
        CHECK(tab(0.4) == 2);
        CHECK_THROWS_AS(tab(1e-6), DomainError);
        CHECK(AlphaProfile::constant(3)(1e9) == 3);
        CHECK_THROWS(BetaProfile(Tabulated{{1e-3, 1e-5}, {1, 2}}, 0.5));
        CHECK_THROWS(BetaProfile(Tabulated{{1e-5, 1e-3}, {1, 2}}, 0.5));
    }
}
