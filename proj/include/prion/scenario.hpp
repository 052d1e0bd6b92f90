#pragma once

#include <filesystem>

#include "prion/config.hpp"
#include "prion/grid.hpp"

namespace prion {

/// Materializes the configured initial density profile on a grid.
Density build_profile(const ScenarioConfig& cfg, const Grid& g);

struct ScenarioResult {
    std::filesystem::path manifest_path;
};

/// Runs the selected solver(s) and writes trajectory CSV, density
/// snapshots and a manifest JSON with the diagnostics arrays into the
/// configured output directory. Deterministic for a fixed config; the
/// manifest timestamp is the single non-reproducible field.
ScenarioResult run_scenario(const ScenarioConfig& cfg);

} // namespace prion
