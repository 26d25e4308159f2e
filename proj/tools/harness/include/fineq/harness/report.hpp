#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace fineq::harness {

inline constexpr int kReportSchemaVersion = 1;

/// Outcome of one acceptance criterion.
struct CriterionResult {
    std::string id;
    bool passed = false;
    std::string detail;
    nlohmann::json metrics = nlohmann::json::object();
    double seconds = 0.0;
};

struct ScenarioResult {
    std::string name;
    std::vector<CriterionResult> criteria;
    nlohmann::json results = nlohmann::json::object();
};

struct RunReport {
    std::string command;
    std::string config_hash;
    std::uint64_t seed = 0;
    double wall_clock_seconds = 0.0;
    std::vector<ScenarioResult> scenarios;

    bool all_passed() const;
    /// Scenarios sorted by name, so merged runs serialise identically.
    nlohmann::json to_json() const;
};

/// The report minus fields that vary between runs (wall clock, versions, timings).
nlohmann::json stable_view(const nlohmann::json& report);

/// "fnv1a64:" followed by 16 hex digits.
std::string config_hash(std::string_view canonical_text);

nlohmann::json versions();

void write_json(const std::filesystem::path& file, const nlohmann::json& j);

}  // namespace fineq::harness
