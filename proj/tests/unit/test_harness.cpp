#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "fineq/error.hpp"
#include "fineq/harness/commands.hpp"
#include "fineq/harness/config.hpp"
#include "fineq/harness/criteria.hpp"
#include "fineq/transfer/transfers.hpp"
#include "fineq/transfer/weak_poincare.hpp"
#include "oracles.hpp"

using namespace fineq;
using namespace fineq::harness;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    const auto dir = fs::temp_directory_path() / "fineq_test_harness" / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& f) {
    std::ifstream is(f, std::ios::binary);
    std::stringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

void put(const fs::path& f, const std::string& text) {
    std::ofstream os(f);
    os << text;
}

std::string config_error(const std::string& text, const std::string& name = "cfg.yaml") {
    try {
        const auto cfg = ConfigNode::load_string(text, name);
        CommandOptions o;
        o.out_dir = scratch("config_error");
        cmd_transfer(cfg, o);
    } catch (const ConfigError& e) {
        return e.what();
    }
    return "";
}

// Structural equality with a relative tolerance on floating-point leaves.
void compare_json(const nlohmann::json& got, const nlohmann::json& want, const std::string& where) {
    CAPTURE(where);
    if (want.is_number_float() || got.is_number_float()) {
        REQUIRE(got.is_number());
        const double a = got.get<double>(), b = want.get<double>();
        CHECK(std::abs(a - b) <= 1e-9 * std::max(1.0, std::abs(b)));
        return;
    }
    REQUIRE(got.type() == want.type());
    if (want.is_object()) {
        CHECK(got.size() == want.size());
        for (auto it = want.begin(); it != want.end(); ++it) {
            REQUIRE(got.contains(it.key()));
            compare_json(got.at(it.key()), it.value(), where + "/" + it.key());
        }
    } else if (want.is_array()) {
        REQUIRE(got.size() == want.size());
        for (std::size_t i = 0; i < want.size(); ++i) compare_json(got[i], want[i], where + "/" + std::to_string(i));
    } else {
        CHECK(got == want);
    }
}

}  // namespace

TEST_SUITE("configuration") {
    TEST_CASE("errors carry file, line and column") {
        const auto unknown = config_error("scenario: x\npipeline:\n  - {stage: log_rate, C: 1, r0: 0.5}\nbogus: 1\n");
        CHECK(unknown == "cfg.yaml:4:1: unknown key 'bogus'");
        const auto empty = config_error("scenario: x\npipeline: []\n");
        CHECK(empty.find("cfg.yaml:2:") == 0);
        CHECK(empty.find("no stages") != std::string::npos);
        const auto syntax = config_error("scenario: x\npipeline: [\n");
        CHECK(syntax.find("cfg.yaml:") == 0);
        const auto type = config_error("scenario: x\npipeline:\n  - {stage: log_rate, C: one, r0: 0.5}\n");
        CHECK(type.find("cfg.yaml:3:") == 0);
        CHECK(type.find("wrong type") != std::string::npos);
        const auto stage = config_error("scenario: x\npipeline:\n  - {stage: teleport}\n");
        CHECK(stage.find("unknown stage 'teleport'") != std::string::npos);
        const auto nested = config_error("scenario: x\npipeline:\n  - {stage: log_rate, C: 1, r0: 0.5, q: 2}\n");
        CHECK(nested.find("cfg.yaml:3:") == 0);
        CHECK(nested.find("unknown key 'q'") != std::string::npos);
        CHECK_THROWS_WITH_AS(ConfigNode::load_file("/nonexistent/fineq.yaml"), doctest::Contains("cannot open config file"),
                             ConfigError);
        CHECK_THROWS_AS(ConfigNode::load_string("- 1\n- 2\n"), ConfigError);
    }

    TEST_CASE("accessors") {
        const auto cfg = ConfigNode::load_string("a: 2.5\nb: [1, 2, 3]\nc: {d: text}\n");
        CHECK(cfg.get<double>("a") == 2.5);
        CHECK(cfg.get<std::vector<double>>("b") == std::vector<double>{1, 2, 3});
        CHECK(cfg.at("c").get<std::string>("d") == "text");
        CHECK(cfg.get_or<int>("missing", 7) == 7);
        CHECK_FALSE(cfg.find("missing").has_value());
        CHECK_THROWS_WITH_AS(cfg.at("missing"), doctest::Contains("missing required key 'missing'"), ConfigError);
    }

    TEST_CASE("canonical text and hashes") {
        const auto a = ConfigNode::load_string("x: 1\ny: {b: 2, a: 3}\n");
        const auto b = ConfigNode::load_string("y: {a: 3, b: 2}\nx: 1\n");
        CHECK(canonical_text(a.yaml()) == canonical_text(b.yaml()));
        CHECK(config_hash(canonical_text(a.yaml())) == config_hash(canonical_text(b.yaml())));
        // FNV-1a 64 reference values.
        CHECK(config_hash("") == "fnv1a64:cbf29ce484222325");
        CHECK(config_hash("a") == "fnv1a64:af63dc4c8601ec8c");
        CHECK(config_hash("foobar") == "fnv1a64:85944171f73967e8");
    }

    TEST_CASE("output directory") {
        CHECK(default_out_dir(fs::path("/tmp/x")) == fs::path("/tmp/x"));
        ::setenv("FINEQ_OUT_DIR", "/tmp/from_env", 1);
        CHECK(default_out_dir(std::nullopt) == fs::path("/tmp/from_env"));
        ::unsetenv("FINEQ_OUT_DIR");
        CHECK(default_out_dir(std::nullopt) == fs::current_path());
    }
}

TEST_SUITE("pipelines") {
    TEST_CASE("hand-picked dyadic parameters") {
        const auto cfg = ConfigNode::load_string(
            "pipeline:\n"
            "  - {stage: log_rate, C: 1, r0: 0.5}\n"
            "  - {stage: poincare, params: {delta0_pow2: 4.5, delta_pow2: 0.5, epsilon: 0.125}}\n");
        const auto out = run_pipeline(cfg.at("pipeline"), ".");
        REQUIRE(out.size() == 2);
        CHECK(out[1].stage == "poincare");
        const oracle::Dyadic p{std::pow(2.0, 4.5), std::sqrt(2.0), 0.125};
        CHECK(out[1].result.alpha()(0.1) == doctest::Approx(oracle::poincare(p, 1.0)).epsilon(1e-12));
        CHECK(std::abs(out[1].result.alpha()(0.1) / 40.82 - 1) <= 0.1);
    }

    TEST_CASE("infeasible stages are named") {
        const auto cfg = ConfigNode::load_string(
            "pipeline:\n"
            "  - stage: tail\n"
            "    a: 1\n"
            "    bound: {family: constant, value: 1}\n"
            "  - {stage: weak_poincare}\n");
        try {
            run_pipeline(cfg.at("pipeline"), ".");
            FAIL("expected an infeasible stage");
        } catch (const InfeasibleError& e) {
            CHECK(std::string(e.what()).find("stage 'tail'") == 0);
        }
        const auto orphan = ConfigNode::load_string("pipeline:\n  - {stage: poincare}\n");
        CHECK_THROWS_AS(run_pipeline(orphan.at("pipeline"), "."), ConfigError);
    }

    TEST_CASE("tail then weak Poincare equals the direct composition") {
        const auto cfg = ConfigNode::load_string(
            "pipeline:\n"
            "  - stage: tail\n"
            "    a: 1\n"
            "    bound: {family: gaussian, A: 1, c: 1}\n"
            "  - {stage: weak_poincare, grid_points: 300}\n");
        const auto out = run_pipeline(cfg.at("pipeline"), ".");
        REQUIRE(out.size() == 2);
        const auto beta = transfer::tail_to_weak_lsi(1, transfer::TailBound(transfer::GaussianTail{1, 1})).beta();
        transfer::WeakPoincareOptions o;
        o.grid_points = 300;
        const auto direct = transfer::weak_lsi_to_weak_poincare(beta, o);
        const transfer::WeakPoincareConstruction wp(beta, transfer::WeakPoincareConstruction::choose_params(beta.r0()));
        for (double s : {1e-9, 1e-5, 0.5 * wp.r1()}) {
            CAPTURE(s);
            CHECK(out[1].result.alpha()(s) == direct.alpha()(s));
            CHECK(out[0].result.beta()(s) == beta(s));
            // Never above either closed-form bound at the same point.
            CHECK(out[1].result.alpha()(s) <=
                  std::max(wp.displayed_alpha(s), wp.constructive_alpha(s)) * (1 + 1e-12));
        }
    }
}

TEST_SUITE("commands") {
    TEST_CASE("transfer report against the golden file") {
        const fs::path config = fs::path(FINEQ_SOURCE_DIR) / "configs" / "poincare_fixed.yaml";
        CommandOptions o;
        o.out_dir = scratch("golden");
        const auto rep = cmd_transfer(ConfigNode::load_file(config), o);
        CHECK(rep.all_passed());
        CHECK(finish(rep, o.out_dir) == kExitPass);
        const auto got = stable_view(nlohmann::json::parse(slurp(o.out_dir / "report.json")));
        CHECK_FALSE(got.contains("wall_clock_seconds"));
        const fs::path golden = fs::path(FINEQ_SOURCE_DIR) / "tests" / "golden" / "poincare_fixed.json";
        if (std::getenv("FINEQ_UPDATE_GOLDEN")) put(golden, got.dump(2) + "\n");
        REQUIRE(fs::exists(golden));
        compare_json(got, nlohmann::json::parse(slurp(golden)), "");
        CHECK(fs::exists(o.out_dir / "1_poincare.csv"));
    }

    TEST_CASE("sampling is byte-identical across runs and thread counts") {
        const auto cfg = ConfigNode::load_string(
            "scenario: s\nmeasure: ou\nseed: 5\nn_paths: 500\ndim: 2\n"
            "grid: {kind: uniform, T: 1, steps: 16}\noutput: {binary: ou.bin}\n");
        CommandOptions a, b;
        a.out_dir = scratch("sample_a");
        b.out_dir = scratch("sample_b");
        b.threads = 3;
        cmd_sample(cfg, a);
        cmd_sample(cfg, b);
        CHECK(slurp(a.out_dir / "ou.bin") == slurp(b.out_dir / "ou.bin"));
        CommandOptions c = a;
        c.out_dir = scratch("sample_c");
        c.seed = 6;
        cmd_sample(cfg, c);
        CHECK(slurp(a.out_dir / "ou.bin") != slurp(c.out_dir / "ou.bin"));
    }

    TEST_CASE("estimation from a sampled file") {
        const auto dir = scratch("estimate");
        put(dir / "s.yaml", "scenario: s\nmeasure: gaussian\nseed: 3\nn_paths: 20000\noutput: {binary: g.bin}\n");
        CommandOptions o;
        o.out_dir = dir;
        cmd_sample(ConfigNode::load_file(dir / "s.yaml"), o);
        put(dir / "e.yaml",
            "scenario: e\nensemble: g.bin\nfunctions:\n  - {name: H1, kind: hermite, degree: 1, t: 1}\n"
            "estimators: [variance]\nexpect:\n"
            "  - {criterion: X1, function: H1, estimator: variance, value: 1, sigmas: 4}\n");
        const auto rep = cmd_estimate(ConfigNode::load_file(dir / "e.yaml"), o);
        REQUIRE(rep.scenarios.size() == 1);
        REQUIRE(rep.scenarios[0].criteria.size() == 1);
        CHECK(rep.scenarios[0].criteria[0].passed);
        put(dir / "missing.yaml", "scenario: e\nensemble: nowhere.bin\nfunctions:\n  - {name: H1, kind: hermite, degree: 1, t: 1}\n");
        CHECK_THROWS_WITH_AS(cmd_estimate(ConfigNode::load_file(dir / "missing.yaml"), o),
                             doctest::Contains("cannot open ensemble file"), DataError);
    }

    TEST_CASE("suites") {
        CHECK(criterion_ids().size() == 10);
        CHECK(criterion_ids().front() == "A1");
        CHECK(suite_criteria("transfer") == std::vector<std::string>{"A1", "A2", "A3"});
        CHECK(suite_criteria("all").size() == 10);
        CHECK_THROWS(suite_criteria("nonsense"));
        CHECK_THROWS_WITH(run_criterion("A9000", {}), doctest::Contains("unknown criterion"));
    }
}
