#pragma once

#include <filesystem>
#include <string_view>

#include "fineq/sampling/ensemble.hpp"

namespace fineq::sampling {

inline constexpr std::string_view kEnsembleMagic = "FINEQENS";
inline constexpr std::uint32_t kEnsembleVersion = 1;

/// Binary layout: 8-byte magic, u32 version, u64 header length, UTF-8 JSON
/// header (config, grid, shape, diagnostics), then little-endian f64 states,
/// path-major, followed by the frames block when present.
void write_ensemble(const std::filesystem::path& file, const Ensemble& e);
Ensemble read_ensemble(const std::filesystem::path& file);

/// One row per (path, node): path,node,t,x0,...; intended for small runs.
void write_ensemble_csv(const std::filesystem::path& file, const Ensemble& e);

}  // namespace fineq::sampling
