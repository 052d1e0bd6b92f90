#pragma once

#include <vector>

#include "prion/equilibria.hpp"
#include "prion/params.hpp"

namespace prion {

/// Right-hand side of the closed moment system:
///   dU = beta*P - mu*U - 2*beta*x0*U
///   dV = lambda - gamma*V - tau*U*V + beta*x0^2*U
///   dP = tau*U*V - mu*P - beta*x0^2*U
OdeState ode_rhs(const OdeState& s, const Params& p);

struct IntegrateOptions {
    double rel_tol = 1e-9;
    double abs_tol = 1e-12;
    /// Upper bound on the step so the output stays dense enough for
    /// interpolation downstream.
    double max_step = 0.1;
};

/// Time series of the moment system along one run.
struct OdeTrajectory {
    std::vector<double> times;
    std::vector<OdeState> states;
    Params params;

    const OdeState& back() const { return states.back(); }
};

/// Integrates the moment system with an adaptive embedded Dormand-Prince
/// 5(4) pair from t = 0 to t_end, recording every accepted step.
///
/// Output states are clamped to the cone K: components in (-1e-10, 0)
/// snap to 0 and P is raised to x0*U when it trails by less than 1e-10;
/// larger violations raise NegativeDensity. Throws ToleranceNotMet if
/// the controller underflows the minimum step.
OdeTrajectory integrate_ode(const Params& p, const OdeState& init, double t_end,
                            const IntegrateOptions& opts = {});

} // namespace prion
