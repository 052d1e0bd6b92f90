#include "prion/equilibria.hpp"

#include <cmath>

#include "prion/errors.hpp"
#include "prion/phi.hpp"

namespace prion {

Equilibrium disease_free_equilibrium(const Params& p, const Grid& g) {
    validate(p);
    return {p.lambda / p.gamma, Density(g, Frame::original)};
}

OdeState disease_equilibrium_ode(const Params& p) {
    validate(p);
    const double m0 = p.mu0();
    const double excess = p.lambda * p.beta * p.tau - p.gamma * m0 * m0;
    if (!(excess > 0.0))
        throw SubcriticalParameters("disease equilibrium requires threshold ratio > 1");
    OdeState s;
    s.U = excess / (p.mu * p.tau * (p.mu + 2.0 * p.beta * p.x0));
    s.V = m0 * m0 / (p.beta * p.tau);
    s.P = excess / (p.beta * p.mu * p.tau);
    return s;
}

double stationary_density_coefficient(const Params& p) {
    const double m0 = p.mu0();
    const double excess = p.lambda * p.beta * p.tau - p.gamma * m0 * m0;
    return (2.0 * p.beta / (p.mu * p.tau)) * excess / (m0 * (p.mu + 2.0 * p.beta * p.x0));
}

Density stationary_density(const Params& p, const Grid& g) {
    validate(p);
    const double m0 = p.mu0();
    if (!(p.lambda * p.beta * p.tau > p.gamma * m0 * m0))
        throw SubcriticalParameters("stationary density requires threshold ratio > 1");
    const double c = stationary_density_coefficient(p);
    Density u(g, Frame::original);
    for (std::size_t i = 0; i < g.size(); ++i)
        u.values[i] = c * phi(p.beta * (g.node(i) - p.x0) / m0);
    return u;
}

SplittingKernelCheck validate_splitting_kernel(double x, double x0, int n_quad) {
    if (n_quad < 2) throw ValidationError("n_quad must be at least 2");
    SplittingKernelCheck r{};
    if (!(x > x0)) {
        // kappa vanishes identically below the critical length
        r.norm_residual = 1.0;
        r.symmetry_residual = 0.0;
        r.mass_residual = std::abs(x);
        r.degenerate = true;
        return r;
    }
    // Quadrature uses the closure value 1/x at y = 0 and y = x; the open
    // interval differs on a null set and trapezoid becomes exact for it.
    const auto kappa = [&](double y) { return (y >= 0.0 && y <= x) ? 1.0 / x : 0.0; };

    const double h = x / n_quad;
    double norm = 0.0, mass = 0.0, sym = 0.0;
    for (int i = 0; i <= n_quad; ++i) {
        const double y = i * h;
        const double w = (i == 0 || i == n_quad) ? 0.5 * h : h;
        norm += w * kappa(y);
        mass += w * y * kappa(y);
        sym = std::max(sym, std::abs(kappa(y) - kappa(x - y)));
    }
    r.norm_residual = std::abs(norm - 1.0);
    r.mass_residual = std::abs(2.0 * mass - x);
    r.symmetry_residual = sym;
    r.degenerate = false;
    return r;
}

double splitting_kernel(double y, double x, double x0) {
    if (!(x > x0)) return 0.0;
    return (y > 0.0 && y < x) ? 1.0 / x : 0.0;
}

} // namespace prion
