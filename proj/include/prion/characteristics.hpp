#pragma once

#include <functional>
#include <vector>

#include "prion/grid.hpp"
#include "prion/omega_path.hpp"
#include "prion/params.hpp"

namespace prion {

/// Samples of the integral transform v(t,x) = int_x^inf (xi - x) u(xi) dxi.
/// v is nonnegative, convex and nonincreasing for u >= 0 and vanishes at
/// the truncation point; its value at the left endpoint is the boundary
/// moment P - x0*U.
struct VField {
    Grid grid;
    std::vector<double> values;
    double t = 0.0;
    Frame frame = Frame::original;
};

/// Decay constants entering the transport exponent in the shifted frame.
struct DecayCoefficients {
    double mu0;
    double beta;
};

/// Double suffix integration of u by trapezoid. The second centered
/// difference of the output recovers u to O(dx^2) in the interior.
VField v_transform(const Density& u);

/// Inverts v back to a density by second differences (one-sided at the two
/// boundary nodes). Negative values are clamped to zero; throws
/// NoiseDominated when the clamped mass exceeds 1e-6 of the total mass.
Density recover_u(const VField& v);

/// Solves x = int_rho^t omega(r) dr for the foot time rho in (s, t).
/// Unique because omega >= omega_min > 0. Throws OutOfBoundaryRegion when
/// x >= int_s^t omega (the point traces back to the initial data instead).
double rho_inverse(const OmegaPath& w, double s, double t, double x);

/// Where a backward characteristic through (t, x) lands, and the decay
/// accumulated along it. `mu_coef` is mu in the original frame or mu0 in
/// the shifted frame; `x_left` the matching boundary abscissa.
struct CharacteristicTrace {
    enum class FootKind { initial_data, boundary };
    FootKind kind;
    double foot_time;     ///< s for the initial branch, rho for the boundary branch
    double foot_position; ///< x - int_s^t omega, or x_left
    double decay_exponent;
};

CharacteristicTrace trace_characteristic(double mu_coef, double beta, double x_left,
                                         const OmegaPath& w, double s, double t, double x);

/// Evolution operator of the transport-decay problem without gain term,
/// shifted frame: [U0(t,s) g](x) = g(x - int_s^t omega) e^{-phi} with
/// phi = mu0 (t-s) + beta (t-s)(x - int omega) + beta int_s^t (t-r) omega dr.
/// g is interpolated monotone-cubically at the characteristic feet and
/// extended by zero.
Density U0_apply(const DecayCoefficients& c, const OmegaPath& w, double s, double t,
                 const Density& g);

/// Boundary-data part of the same evolution: h(rho(t,x)) carried along the
/// characteristic entering at x = 0, decayed by
/// exp(-[mu0 (t-rho) + beta x (t-rho) - beta K(t,x)]), and zero for
/// x >= int_s^t omega.
Density V0_apply(const DecayCoefficients& c, const OmegaPath& w, double s, double t,
                 const std::function<double(double)>& h, const Grid& g);

/// The transform-route solver: traces every requested (t, x) back along
/// its characteristic; feet in the initial region read the double
/// suffix integral of u0 (through an interpolant whose second derivative
/// is the piecewise-linear density itself), feet on the boundary read
/// `boundary` (the moment P - x0 U at the foot time). Decay integrals are
/// evaluated in closed form on the cubic omega interpolant.
std::vector<VField> solve_v_characteristics(const Params& p, const OmegaPath& w,
                                            const Density& u0,
                                            const std::function<double(double)>& boundary,
                                            const std::vector<double>& times);

/// Frame-generic core of the transform solver; the original frame passes
/// (mu, x0), the shifted frame (mu0, 0).
std::vector<VField> solve_v_on_grid(double mu_coef, double beta, const OmegaPath& w,
                                    const Density& u0,
                                    const std::function<double(double)>& boundary,
                                    const std::vector<double>& times);

/// Monotone iteration for the full problem with gain term:
///   u_1(t) = U0(t,s) g,   u_{n+1}(t) = u_1(t) + int_s^t U0(t,r) B u_n(r) dr,
/// with B u = 2 beta int_x^inf u. The iterates increase pointwise and stay
/// uniformly bounded; the returned sequence holds them evaluated at the
/// final time. The time integral uses a composite trapezoid over
/// `n_time_nodes` nodes. Iteration stops early once two successive
/// iterates differ by less than 1e-12 in the weighted norm.
std::vector<Density> picard_iterate(const DecayCoefficients& c, const OmegaPath& w, double s,
                                    const Density& g, double t, int n_iter,
                                    int n_time_nodes = 65);

} // namespace prion
