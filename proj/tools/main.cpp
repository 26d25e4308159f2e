#include <CLI11.hpp>
#include <filesystem>
#include <iostream>
#include <optional>

#include "fineq/error.hpp"
#include "fineq/harness/commands.hpp"
#include "fineq/harness/config.hpp"

namespace fs = std::filesystem;
using namespace fineq::harness;

namespace {

void print_summary(const RunReport& rep) {
    for (const auto& sc : rep.scenarios) {
        for (const auto& c : sc.criteria) {
            std::cout << (c.passed ? "PASS " : "FAIL ") << c.id << " [" << sc.name << "] " << c.detail << "\n";
        }
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"fineq: functional inequalities on path space"};
    app.require_subcommand(1);

    std::string config;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out;
    int threads = 1;
    std::string suite = "all";

    auto add_common = [&](CLI::App* sub, bool needs_config) {
        auto* c = sub->add_option("--config", config, "YAML configuration file");
        if (needs_config) c->required();
        sub->add_option("--seed", seed, "Override the configured seed");
        sub->add_option("--out", out, "Output directory (default $FINEQ_OUT_DIR or .)");
        sub->add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);
    };
    auto* transfer = app.add_subcommand("transfer", "Run a transfer pipeline");
    auto* sample = app.add_subcommand("sample", "Sample a path ensemble");
    auto* estimate = app.add_subcommand("estimate", "Estimate functionals on an ensemble");
    auto* verify = app.add_subcommand("verify", "Run the acceptance suite");
    add_common(transfer, true);
    add_common(sample, true);
    add_common(estimate, true);
    add_common(verify, false);
    verify->add_option("--suite", suite, "transfer, gaussian, flat_bridge, ou, hyperbolic or all");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfigError;
    }

    CommandOptions opts;
    opts.seed = seed;
    opts.threads = threads;
    opts.out_dir = default_out_dir(out ? std::optional<fs::path>(*out) : std::nullopt);
    if (!config.empty()) opts.config = config;

    try {
        RunReport rep;
        if (verify->parsed()) {
            rep = cmd_verify(suite, opts);
        } else {
            const auto cfg = ConfigNode::load_file(config);
            if (transfer->parsed()) rep = cmd_transfer(cfg, opts);
            if (sample->parsed()) rep = cmd_sample(cfg, opts);
            if (estimate->parsed()) rep = cmd_estimate(cfg, opts);
        }
        print_summary(rep);
        const int code = finish(rep, opts.out_dir);
        std::cout << "report: " << (opts.out_dir / "report.json").string() << "\n";
        return code;
    } catch (const fineq::InfeasibleError& e) {
        std::cerr << "error: infeasible " << e.what() << "\n";
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
    }
    return kExitConfigError;
}
