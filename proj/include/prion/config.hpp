#pragma once

#include <optional>
#include <string>

#include "prion/params.hpp"

namespace prion {

/// Named initial density profiles a config can request.
struct DensityProfile {
    enum class Kind { zero, indicator, scaled_u_star, gaussian };
    Kind kind = Kind::zero;
    // indicator(lo, hi, height)
    double lo = 0.0, hi = 0.0, height = 0.0;
    // scaled_u_star(factor)
    double factor = 0.0;
    // gaussian(center, width, mass)
    double center = 0.0, width = 0.0, mass = 0.0;
};

enum class RegimeChoice { automatic, disease_free, disease };
enum class SolverChoice { ode, pide, characteristics, all };

/// A fully validated scenario: model constants, regime, initial data,
/// grid, time stepping, solver selection and output directory.
struct ScenarioConfig {
    Params params{};
    RegimeChoice regime = RegimeChoice::automatic;

    double initial_U = 0.0;
    double initial_V = -1.0; ///< -1 means "default to lambda/gamma"
    double initial_P = 0.0;
    DensityProfile density;

    double x_max = -1.0; ///< -1 means "default to x0 + 25*mu0/beta"
    int n = 2000;

    double t_end = 100.0;
    double dt = 0.0; ///< 0 means the solver default
    int snapshot_every = 0;

    SolverChoice solver = SolverChoice::ode;
    std::string out_dir = "out";

    /// The regime actually in force (resolves `automatic` by threshold).
    Regime resolved_regime() const;
    double resolved_x_max() const;
    double resolved_initial_V() const;
};

/// Parses line-oriented `key = value` text with `#` comments. Unknown keys
/// are rejected. Throws ParseError with the offending line number for
/// syntax problems and ValidationError for missing or invalid content
/// (an empty config reports all six missing constants at once).
ScenarioConfig parse_config(const std::string& text);

ScenarioConfig load_config(const std::string& path);

/// Serializes a config so that reparsing yields an identical one.
std::string serialize_config(const ScenarioConfig& cfg);

} // namespace prion
