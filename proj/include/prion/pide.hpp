#pragma once

#include <optional>
#include <vector>

#include "prion/grid.hpp"
#include "prion/params.hpp"

namespace prion {

/// Instantaneous state of the coupled monomer / polymer-density system.
struct PideState {
    double t = 0.0;
    double V = 0.0;
    Density u;
};

struct PideOptions {
    /// Time step. 0 selects the default 0.5*dx/(tau*V_bound) with
    /// V_bound = max(V0, lambda/gamma, V*) + 1.
    double dt = 0.0;
    /// Record a density snapshot every this many steps (0: only final).
    int snapshot_every = 0;
    /// Keep V fixed at its initial value; the density then evolves under
    /// the frozen transport speed tau*V0. Used for constant-speed
    /// cross-checks against the characteristics route.
    bool freeze_V = false;
};

/// Per-step diagnostics of a run.
struct PideDiagnostics {
    std::vector<double> t;
    std::vector<double> norm; ///< weighted norm with a = mu0/beta
    std::vector<double> U;
    std::vector<double> P;
    std::vector<double> V;
};

struct PideRun {
    Params params;
    Grid grid;
    double dt = 0.0;
    std::vector<PideState> snapshots;
    PideDiagnostics diagnostics;

    const PideState& final_state() const { return snapshots.back(); }
};

/// 2*beta times the suffix integral of u: the density gained at length x
/// from every splitting of a longer chain. Nonincreasing in x, zero at
/// the truncation point.
Density fragmentation_gain(const Density& u, double beta);

/// Time-marches the coupled system from `init` to t_end on grid g.
///
/// Each step, with u the density entering the step:
///   1. V advances by one explicit RK4 step of
///          dV = lambda - gamma*V - tau*V*U + beta*x0^2*U
///      holding U at its current trapezoid value (for the equidistributed
///      kernel the boundary gain collapses to beta*x0^2*U).
///   2. first-order upwind transport at speed tau*V with inflow value 0,
///   3. multiplication by the exact factor exp(-(mu + beta*x)*dt),
///   4. addition of dt * fragmentation_gain(u) evaluated on the density
///      that entered the step, which keeps the splitting loss and gain
///      channels in balance over the step.
/// The result stays nonnegative for nonnegative data.
///
/// Throws CflViolation if tau*V*dt/dx exceeds 1 at any step and
/// NegativeDensity if a value drops below -1e-10.
PideRun integrate_pide(const Params& p, const PideState& init, double t_end, const Grid& g,
                       const PideOptions& opts = {});

/// Centered-difference residual of the monomer balance
/// d/dt [V + P] = lambda - gamma*V - mu*P along the recorded diagnostics.
/// One value per interior diagnostic sample.
std::vector<double> mass_balance_residual(const PideRun& run);

} // namespace prion
