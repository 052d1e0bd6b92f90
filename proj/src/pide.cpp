#include "prion/pide.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "prion/equilibria.hpp"
#include "prion/errors.hpp"

namespace prion {

Density fragmentation_gain(const Density& u, double beta) {
    Density g(u.grid, u.frame);
    const auto s = suffix_integral(u);
    for (std::size_t i = 0; i < s.size(); ++i) g.values[i] = 2.0 * beta * s[i];
    return g;
}

namespace {

double default_dt(const Params& p, double V0, double dx) {
    double v_bound = std::max(V0, p.lambda / p.gamma);
    if (p.threshold_ratio() > 1.0) {
        const double m0 = p.mu0();
        v_bound = std::max(v_bound, m0 * m0 / (p.beta * p.tau));
    }
    return 0.5 * dx / (p.tau * (v_bound + 1.0));
}

} // namespace

PideRun integrate_pide(const Params& p, const PideState& init, double t_end, const Grid& g,
                       const PideOptions& opts) {
    validate(p);
    if (!(t_end > 0.0)) throw ValidationError("t_end must be positive");
    if (init.V < 0.0) throw ValidationError("initial V must be nonnegative");
    if (!init.u.grid.same_as(g)) throw ValidationError("initial density grid mismatch");
    if (init.u.frame != Frame::original)
        throw ValidationError("integrate_pide expects an original-frame density");
    if (!init.u.nonnegative(1e-12)) throw ValidationError("initial density must be >= 0");

    const double dx = g.dx();
    const double dt = opts.dt > 0.0 ? opts.dt : default_dt(p, init.V, dx);
    const long n_steps = std::lround(t_end / dt);
    if (n_steps < 1) throw ValidationError("t_end shorter than one step");

    PideRun run{p, g, dt, {}, {}};
    const std::size_t m = g.size();

    // exact reaction factor per node, constant because dt is constant
    std::vector<double> decay(m);
    for (std::size_t i = 0; i < m; ++i)
        decay[i] = std::exp(-(p.mu + p.beta * g.node(i)) * dt);

    const double a = p.mu0() / p.beta;
    Density u = init.u;
    double V = init.V;

    auto record_diag = [&](double t) {
        run.diagnostics.t.push_back(t);
        run.diagnostics.norm.push_back(weighted_norm(u, a));
        const auto [U, P] = moments(u);
        run.diagnostics.U.push_back(U);
        run.diagnostics.P.push_back(P);
        run.diagnostics.V.push_back(V);
    };

    record_diag(0.0);
    run.snapshots.push_back({0.0, V, u});

    std::vector<double> next(m);
    for (long step = 1; step <= n_steps; ++step) {
        const double U = trapezoid(u);

        if (!opts.freeze_V) {
            const auto f = [&](double v) {
                return p.lambda - p.gamma * v - p.tau * v * U + p.beta * p.x0 * p.x0 * U;
            };
            const double k1 = f(V);
            const double k2 = f(V + 0.5 * dt * k1);
            const double k3 = f(V + 0.5 * dt * k2);
            const double k4 = f(V + dt * k3);
            V += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        }

        const double speed = p.tau * V;
        const double cfl = speed * dt / dx;
        if (cfl > 1.0 + 1e-12)
            throw CflViolation("tau*V*dt/dx = " + std::to_string(cfl) + " at step " +
                               std::to_string(step));

        const Density gain = fragmentation_gain(u, p.beta);

        next[0] = 0.0; // inflow boundary u(t, x0) = 0
        for (std::size_t i = 1; i < m; ++i)
            next[i] = u.values[i] - cfl * (u.values[i] - u.values[i - 1]);
        for (std::size_t i = 0; i < m; ++i)
            next[i] = next[i] * decay[i] + dt * gain.values[i];
        next[m - 1] = 0.0; // truncation boundary

        u.values.swap(next);

        const double mn = u.min_value();
        if (mn < -1e-10)
            throw NegativeDensity("density reached " + std::to_string(mn) + " at step " +
                                  std::to_string(step));

        const double t = static_cast<double>(step) * dt;
        record_diag(t);
        if ((opts.snapshot_every > 0 && step % opts.snapshot_every == 0) || step == n_steps)
            run.snapshots.push_back({t, V, u});
    }
    return run;
}

std::vector<double> mass_balance_residual(const PideRun& run) {
    const auto& d = run.diagnostics;
    if (d.t.size() < 3) throw ValidationError("mass balance needs at least 3 samples");
    const Params& p = run.params;
    std::vector<double> res;
    res.reserve(d.t.size() - 2);
    for (std::size_t i = 1; i + 1 < d.t.size(); ++i) {
        const double num =
            (d.V[i + 1] + d.P[i + 1]) - (d.V[i - 1] + d.P[i - 1]);
        const double ddt = num / (d.t[i + 1] - d.t[i - 1]);
        const double rhs = p.lambda - p.gamma * d.V[i] - p.mu * d.P[i];
        res.push_back(std::abs(ddt - rhs));
    }
    return res;
}

} // namespace prion
