#pragma once

#include "prion/grid.hpp"
#include "prion/params.hpp"

namespace prion {

/// A point of the closed moment system: U polymers, V free monomers,
/// P monomers bound in polymers. Physical states live in the cone
/// K = { U, V >= 0, P >= x0 * U }.
struct OdeState {
    double U = 0.0;
    double V = 0.0;
    double P = 0.0;
};

/// Monomer level and polymer density of an equilibrium.
struct Equilibrium {
    double V;
    Density u;
};

/// The disease-free equilibrium (lambda/gamma, u == 0) sampled on `g`.
/// Exists for every parameter set.
Equilibrium disease_free_equilibrium(const Params& p, const Grid& g);

/// Closed-form disease equilibrium of the moment system:
///   U* = (lambda*beta*tau - gamma*mu0^2) / (mu*tau*(mu + 2*beta*x0))
///   V* = mu0^2 / (beta*tau)
///   P* = (lambda*beta*tau - gamma*mu0^2) / (beta*mu*tau)
/// Throws SubcriticalParameters unless the threshold ratio exceeds 1.
OdeState disease_equilibrium_ode(const Params& p);

/// Coefficient c of the stationary density u*(x) = c * Phi(beta(x-x0)/mu0).
double stationary_density_coefficient(const Params& p);

/// The stationary polymer density u* sampled on an original-frame grid
/// with x_left == x0. Throws SubcriticalParameters when R <= 1.
Density stationary_density(const Params& p, const Grid& g);

/// Residuals of the three defining identities of the equidistributed
/// splitting kernel kappa(y,x) = 1/x on 0 < y < x (for x > x0):
/// unit integral, symmetry about x/2, and mass conservation
/// 2*int y kappa dy = x. For x <= x0 the kernel is identically zero and
/// the norm residual is 1 by convention, flagged `degenerate`.
struct SplittingKernelCheck {
    double norm_residual;
    double symmetry_residual;
    double mass_residual;
    bool degenerate;
};

SplittingKernelCheck validate_splitting_kernel(double x, double x0, int n_quad);

/// Pointwise equidistributed splitting kernel: 1/x for 0 < y < x when the
/// parent chain is above the critical length, 0 elsewhere.
double splitting_kernel(double y, double x, double x0);

} // namespace prion
