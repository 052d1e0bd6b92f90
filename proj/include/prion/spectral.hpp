#pragma once

#include <vector>

#include "prion/grid.hpp"
#include "prion/params.hpp"

namespace prion {

/// Constant-coefficient operator calculus on the shifted half-line:
///   A u = omega u' + (mu0 + beta x) u,   B u = 2 beta int_x^inf u,
///   L = A - B,
/// acting in the weighted space with norm a|u|_1 + |x u|_1. The disease
/// case is the borderline beta*omega = mu0^2 where L has the
/// one-dimensional kernel spanned by e.
struct OperatorContext {
    double omega;
    double mu0;
    double beta;
    double a;
    Grid grid;

    OperatorContext(double omega_, double mu0_, double beta_, double a_, Grid grid_);

    bool disease_case(double tol = 1e-12) const;

    /// Context for the limiting regime of a parameter set, on `g` (shifted
    /// frame, x_left = 0), with the default weight a = mu0/beta.
    static OperatorContext for_params(const Params& p, Regime regime, const Grid& g);
};

/// L u = omega u' + (mu0 + beta x) u - 2 beta int_x^inf u, with the
/// derivative supplied by the caller (analytic when available).
Density apply_L(const OperatorContext& ctx, const Density& u, const Density& du);

/// Closed-form resolvent of A:
///   (lam + A)^{-1} f (x) = (1/omega) int_0^x e^{-[(lam+mu0)(x-y)/omega
///                          + beta(x^2-y^2)/(2 omega)]} f(y) dy.
/// Evaluated by an O(n) recurrence in exponent differences (never forming
/// e^{+Theta}, which would overflow). Positive for f >= 0 and
/// |u|_1 <= |f|_1 / (lam + mu0).
Density resolvent_A(const OperatorContext& ctx, double lam, const Density& f);

/// Monotone resolvent iteration for L = A - B:
///   u_{n+1} = (lam+A)^{-1} f + (lam+A)^{-1} B u_n,
/// which increases pointwise for f >= 0. Stops at `n_iter` or when the
/// sup-difference of successive iterates drops below `tol`.
struct ResolventLResult {
    Density u;
    std::vector<Density> iterates;
    bool converged;
};
ResolventLResult resolvent_L(const OperatorContext& ctx, double lam, const Density& f,
                             int n_iter = 200, double tol = 1e-13);

/// The kernel element e(x) = (beta/mu0)^2 Phi(beta x / mu0) spanning the
/// null space of L in the disease case, with its quadrature normalization
/// int (a + x) e dx (which is 1 analytically for a = mu0/beta).
struct KernelElement {
    Density e;
    double normalization;
};
KernelElement kernel_e(const OperatorContext& ctx);

/// Analytic derivative of the kernel element.
Density kernel_e_derivative(const OperatorContext& ctx);

/// Rank-one ergodic projection P u = [int (a + x) u dx] e, the long-time
/// limit of the semigroup in the disease case.
Density ergodic_projection(const OperatorContext& ctx, const Density& u);

/// Quadrature value of int (A-B)u sgn(u) (a + x) dx with sgn(0) = 0.
/// Bounded below by (mu0 a - omega)|u|_1 + (mu0 - beta a)|x u|_1 when
/// those coefficients are nonnegative.
double accretivity_bracket(const OperatorContext& ctx, const Density& u, const Density& du);

/// e^{-L t} u0 computed through the characteristics route with constant
/// omega: the transform v of the solution rides along characteristics with
/// boundary value equal to the first moment of u0 propagated by the closed
/// 2x2 moment system, and the density is recovered by second differences.
Density semigroup_step(const OperatorContext& ctx, const Density& u0, double t);

/// Closed-form moment pair of the constant-omega problem:
/// (z0, z1)(t) = e^{G t} (z0, z1) with G = [[-mu0, beta], [omega, -mu0]].
/// In the shifted frame z = (int u, int x u); in the original frame the
/// same system governs (U, P - x0 U). Assembled from decayed exponentials
/// only, so large t cannot overflow.
std::pair<double, double> evolve_moment_pair(double mu0, double beta, double omega, double z0,
                                             double z1, double t);

} // namespace prion
