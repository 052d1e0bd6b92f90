#pragma once

#include <filesystem>
#include <string>

#include "prion/grid.hpp"
#include "prion/ode.hpp"
#include "prion/pide.hpp"

namespace prion {

/// Shortest-exact decimal form of a double (17 significant digits), so
/// writing and reparsing round-trips bit for bit.
std::string format_double(double v);

/// Trajectory CSV: header `t,U,V,P`, one row per accepted step.
void write_trajectory_csv(const std::filesystem::path& path, const OdeTrajectory& traj);

/// Density CSV: header `x,u`, one row per node.
void write_density_csv(const std::filesystem::path& path, const Density& u);

Density read_density_csv(const std::filesystem::path& path, Frame frame);

} // namespace prion
