#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "fineq/harness/report.hpp"

namespace fineq::harness {

struct CriteriaOptions {
    std::uint64_t seed = 20240611;
    int threads = 1;
};

/// Identifiers A1..A10 in order.
const std::vector<std::string>& criterion_ids();

/// Criterion ids exercised by a verify suite: transfer, gaussian,
/// flat_bridge, ou, hyperbolic or all.
std::vector<std::string> suite_criteria(std::string_view suite);

CriterionResult run_criterion(std::string_view id, const CriteriaOptions& opts);

/// Runs every criterion of a suite as one scenario named after the suite.
ScenarioResult run_suite(std::string_view suite, const CriteriaOptions& opts);

}  // namespace fineq::harness
