#include "fineq/harness/report.hpp"

#include <Eigen/Core>
#include <algorithm>
#include <boost/version.hpp>
#include <cstdio>
#include <fstream>

#include "fineq/error.hpp"

namespace fineq::harness {

bool RunReport::all_passed() const {
    for (const auto& s : scenarios)
        for (const auto& c : s.criteria)
            if (!c.passed) return false;
    return true;
}

nlohmann::json RunReport::to_json() const {
    std::vector<const ScenarioResult*> order;
    for (const auto& s : scenarios) order.push_back(&s);
    std::stable_sort(order.begin(), order.end(), [](auto* a, auto* b) { return a->name < b->name; });
    nlohmann::json list = nlohmann::json::array();
    for (const auto* s : order) {
        nlohmann::json crit = nlohmann::json::array();
        for (const auto& c : s->criteria) {
            crit.push_back({{"id", c.id}, {"passed", c.passed}, {"detail", c.detail}, {"metrics", c.metrics},
                            {"seconds", c.seconds}});
        }
        list.push_back({{"name", s->name}, {"criteria", crit}, {"results", s->results}});
    }
    return {{"schema_version", kReportSchemaVersion},
            {"command", command},
            {"config_hash", config_hash},
            {"seed", seed},
            {"wall_clock_seconds", wall_clock_seconds},
            {"versions", versions()},
            {"passed", all_passed()},
            {"scenarios", list}};
}

nlohmann::json stable_view(const nlohmann::json& report) {
    nlohmann::json j = report;
    j.erase("wall_clock_seconds");
    j.erase("versions");
    if (j.contains("scenarios")) {
        for (auto& s : j["scenarios"]) {
            for (auto& c : s["criteria"]) c.erase("seconds");
        }
    }
    return j;
}

std::string config_hash(std::string_view text) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return std::string("fnv1a64:") + buf;
}

nlohmann::json versions() {
    return {{"fineq", FINEQ_VERSION},
            {"compiler", __VERSION__},
            {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) + "." +
                          std::to_string(EIGEN_MINOR_VERSION)},
            {"boost", std::to_string(BOOST_VERSION / 100000) + "." + std::to_string(BOOST_VERSION / 100 % 1000)},
            {"nlohmann_json", std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." +
                                  std::to_string(NLOHMANN_JSON_VERSION_MINOR) + "." +
                                  std::to_string(NLOHMANN_JSON_VERSION_PATCH)}};
}

void write_json(const std::filesystem::path& file, const nlohmann::json& j) {
    if (file.has_parent_path()) std::filesystem::create_directories(file.parent_path());
    std::ofstream os(file, std::ios::trunc);
    if (!os) throw DataError(file.string() + ": cannot open for writing");
    os << j.dump(2) << '\n';
    if (!os) throw DataError(file.string() + ": write failed");
}

}  // namespace fineq::harness
