#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fineq/harness/config.hpp"
#include "fineq/harness/report.hpp"
#include "fineq/sampling/samplers.hpp"
#include "fineq/transfer/profiles.hpp"

namespace fineq::harness {

/// Exit status of every subcommand.
enum ExitCode : int { kExitPass = 0, kExitCriterionFailure = 1, kExitConfigError = 2 };

struct CommandOptions {
    std::optional<std::filesystem::path> config;
    std::optional<std::uint64_t> seed;
    std::filesystem::path out_dir = ".";
    int threads = 1;
};

/// Output directory: --out, else $FINEQ_OUT_DIR, else the working directory.
std::filesystem::path default_out_dir(const std::optional<std::filesystem::path>& flag);

struct StageOutput {
    std::string stage;
    transfer::TransferResult result;
};

/// Runs a `pipeline:` sequence. Source stages (log_rate, weighted_lsi, tail)
/// start a chain; envelope, poincare and weak_poincare consume the current
/// beta profile. Throws ConfigError("no stages") for an empty pipeline and
/// InfeasibleError prefixed with the failing stage name.
std::vector<StageOutput> run_pipeline(const ConfigNode& pipeline, const std::filesystem::path& base_dir,
                                      int threads = 1);

sampling::MeasureTag measure_from_config(const ConfigNode& cfg);
sampling::SamplerConfig sampler_config_from(const ConfigNode& cfg, std::optional<std::uint64_t> seed_override,
                                            int threads);

RunReport cmd_transfer(const ConfigNode& cfg, const CommandOptions& opts);
RunReport cmd_sample(const ConfigNode& cfg, const CommandOptions& opts);
RunReport cmd_estimate(const ConfigNode& cfg, const CommandOptions& opts);
RunReport cmd_verify(const std::string& suite, const CommandOptions& opts);

/// Writes `report.json` into the output directory and returns the exit code it implies.
int finish(const RunReport& report, const std::filesystem::path& out_dir);

}  // namespace fineq::harness
