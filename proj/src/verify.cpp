#include "prion/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <random>
#include <sstream>

#include <nlohmann/json.hpp>

#include "prion/characteristics.hpp"
#include "prion/equilibria.hpp"
#include "prion/errors.hpp"
#include "prion/io.hpp"
#include "prion/ode.hpp"
#include "prion/omega_path.hpp"
#include "prion/phi.hpp"
#include "prion/pide.hpp"
#include "prion/spectral.hpp"

namespace prion {

namespace {

using Clock = std::chrono::steady_clock;

struct Recorder {
    std::vector<VerifyCheck>& checks;
    Clock::time_point t0 = Clock::now();

    void add(const std::string& name, double measured, double bound, bool pass,
             const std::string& note = "", bool logged_only = false) {
        const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
        checks.push_back({name, pass, logged_only, measured, bound, note, secs});
        t0 = Clock::now();
    }
    /// measured <= bound
    void below(const std::string& name, double measured, double bound,
               const std::string& note = "") {
        add(name, measured, bound, measured <= bound, note);
    }
    /// measured >= bound
    void above(const std::string& name, double measured, double bound,
               const std::string& note = "") {
        add(name, measured, bound, measured >= bound, note);
    }
    void log(const std::string& name, double measured, const std::string& note = "") {
        add(name, measured, 0.0, true, note, true);
    }
    void failed(const std::string& name, const std::string& why) {
        add(name, std::nan(""), 0.0, false, why);
    }
};

const Params kSuper{10.0, 1.0, 1.0, 1.0, 1.0, 1.0}; // R = 2.5
const Params kSub{1.0, 1.0, 1.0, 1.0, 1.0, 1.0};    // R = 0.25

Grid reference_grid(const Params& p, int n) { return Grid(p.x0, p.x0 + 50.0, n); }

/// Smooth compactly supported bump of the given height.
Density bump_density(const Grid& g, Frame frame, double center, double width, double height) {
    Density u(g, frame);
    for (std::size_t i = 0; i < g.size(); ++i) {
        const double s = (g.node(i) - center) / width;
        if (std::abs(s) < 1.0) u.values[i] = height * std::exp(1.0 - 1.0 / (1.0 - s * s));
    }
    return u;
}

/// Nonnegative random mixture of gaussians covering the left half of the grid.
Density random_density(const Grid& g, Frame frame, std::mt19937& rng) {
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const double span = g.x_max() - g.x_left();
    Density u(g, frame);
    const int k = 2 + static_cast<int>(unif(rng) * 3);
    for (int j = 0; j < k; ++j) {
        const double w = unif(rng);
        const double c = g.x_left() + (0.05 + 0.45 * unif(rng)) * span;
        const double s = (0.01 + 0.06 * unif(rng)) * span;
        for (std::size_t i = 0; i < g.size(); ++i) {
            const double z = (g.node(i) - c) / s;
            u.values[i] += w * std::exp(-0.5 * z * z);
        }
    }
    return u;
}

double rel_weighted_gap(const Density& u, const Density& ref, double a) {
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < u.values.size(); ++i) {
        const double wt = u.grid.weight(i) * (a + u.grid.node(i) - u.grid.x_left());
        num += wt * std::abs(u.values[i] - ref.values[i]);
        den += wt * std::abs(ref.values[i]);
    }
    return num / den;
}

/// Least-squares slope of y against t.
double fit_slope(const std::vector<double>& t, const std::vector<double>& y) {
    const double n = static_cast<double>(t.size());
    double st = 0, sy = 0, stt = 0, sty = 0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        st += t[i];
        sy += y[i];
        stt += t[i] * t[i];
        sty += t[i] * y[i];
    }
    return (n * sty - st * sy) / (n * stt - st * st);
}

double max_rel_moment_error(const PideRun& run, const OdeTrajectory& ode, double stride) {
    // compare (U, P) series at roughly `stride`-spaced times
    const CubicSeries odeU = CubicSeries::from_samples(ode.times, [&] {
        std::vector<double> v(ode.states.size());
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = ode.states[i].U;
        return v;
    }());
    const CubicSeries odeP = CubicSeries::from_samples(ode.times, [&] {
        std::vector<double> v(ode.states.size());
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = ode.states[i].P;
        return v;
    }());
    double worst = 0.0;
    const auto& d = run.diagnostics;
    const std::size_t step = std::max<std::size_t>(1, static_cast<std::size_t>(stride / run.dt));
    for (std::size_t i = 0; i < d.t.size(); i += step) {
        const double eU = std::abs(d.U[i] - odeU(d.t[i])) / std::max(std::abs(odeU(d.t[i])), 1e-12);
        const double eP = std::abs(d.P[i] - odeP(d.t[i])) / std::max(std::abs(odeP(d.t[i])), 1e-12);
        worst = std::max({worst, eU, eP});
    }
    return worst;
}

double max_mass_residual(const PideRun& run) {
    const auto res = mass_balance_residual(run);
    return *std::max_element(res.begin(), res.end());
}

void criterion_1(Recorder& rec) {
    const OdeState target{2.0, 4.0, 6.0};
    const OdeState inits[3] = {{0.1, 4.0, 0.3}, {5.0, 1.0, 8.0}, {1.0, 10.0, 2.0}};
    double worst = 0.0;
    for (const auto& init : inits) {
        const auto traj = integrate_ode(kSuper, init, 200.0);
        const auto& s = traj.back();
        worst = std::max({worst, std::abs(s.U - target.U) / target.U,
                          std::abs(s.V - target.V) / target.V,
                          std::abs(s.P - target.P) / target.P});
    }
    rec.below("1a ode supercritical equilibrium (3 inits, t=200, rel)", worst, 1e-4);

    const auto traj = integrate_ode(kSub, {1.0, 1.0, 2.0}, 100.0);
    const auto& s = traj.back();
    const double err = std::max({std::abs(s.U), std::abs(s.V - 1.0), std::abs(s.P)});
    rec.below("1b ode subcritical equilibrium (t=100)", err, 1e-6);
}

void criterion_2(Recorder& rec, int n_ref) {
    // subcritical decay
    {
        const Grid g = reference_grid(kSub, n_ref);
        Density u0 = bump_density(g, Frame::original, 6.0, 2.5, 1.0);
        PideRun run = integrate_pide(kSub, {0.0, 1.0, u0}, 30.0, g, {});
        const auto& d = run.diagnostics;
        const double norm0 = d.norm.front();
        const double norm_end = d.norm.back();
        rec.below("2a pide subcritical norm collapse (t=30)", norm_end / norm0, 1e-4);

        std::vector<double> ts, logn;
        for (std::size_t i = 0; i < d.t.size(); ++i) {
            if (d.t[i] >= 10.0 && d.norm[i] > 0.0) {
                ts.push_back(d.t[i]);
                logn.push_back(std::log(d.norm[i]));
            }
        }
        const double rate = -fit_slope(ts, logn);
        const double mu0 = kSub.mu0();
        const double bound = 0.8 * (mu0 - std::sqrt(kSub.lambda * kSub.beta * kSub.tau / kSub.gamma));
        rec.above("2b pide subcritical decay rate (fit on [10,30])", rate, bound);
    }
    // supercritical convergence to the stationary density
    {
        const Grid g = reference_grid(kSuper, n_ref);
        const Density ustar = stationary_density(kSuper, g);
        Density u0(g, Frame::original);
        for (std::size_t i = 0; i < g.size(); ++i) u0.values[i] = 0.5 * ustar.values[i];
        PideRun run = integrate_pide(kSuper, {0.0, 4.0, u0}, 100.0, g, {});
        const double a = kSuper.mu0() / kSuper.beta;
        const double gap = rel_weighted_gap(run.final_state().u, ustar, a);
        rec.below("2c pide supercritical convergence to u* (t=100, rel)", gap, 0.02);
        rec.log("2d pide supercritical |V(100) - V*| (first-order bias)",
                std::abs(run.final_state().V - 4.0));
    }
}

struct MomentRun {
    double err;
    double mass_resid;
};

MomentRun moment_consistency_run(int n) {
    const Grid g = reference_grid(kSuper, n);
    const Density ustar = stationary_density(kSuper, g);
    Density u0(g, Frame::original);
    for (std::size_t i = 0; i < g.size(); ++i) u0.values[i] = 0.5 * ustar.values[i];
    const double v_cap = std::max(4.0, kSuper.lambda / kSuper.gamma);
    PideOptions opts;
    opts.dt = 0.5 * g.dx() / (kSuper.tau * v_cap); // half the a-priori CFL bound
    PideRun run = integrate_pide(kSuper, {0.0, 4.0, u0}, 20.0, g, opts);

    const auto [U0, P0] = moments(u0);
    IntegrateOptions tight;
    tight.rel_tol = 1e-11;
    tight.abs_tol = 1e-13;
    const auto ode = integrate_ode(kSuper, {U0, 4.0, P0}, 20.0, tight);
    return {max_rel_moment_error(run, ode, 0.25), max_mass_residual(run)};
}

void criteria_3_and_7(Recorder& rec, int n_base) {
    const MomentRun base = moment_consistency_run(n_base);
    const MomentRun fine = moment_consistency_run(2 * n_base);
    rec.below("3a moment closure vs ode (t<=20, rel, n=" + std::to_string(n_base) + ")",
              base.err, 0.02);
    rec.below("3b moment closure first-order improvement (ratio)", fine.err / base.err, 0.7);

    const Grid g = reference_grid(kSuper, n_base);
    const double v_cap = std::max(4.0, kSuper.lambda / kSuper.gamma);
    const double dt = 0.5 * g.dx() / (kSuper.tau * v_cap);
    const double bound = 5.0 * (g.dx() + dt) * kSuper.lambda;
    rec.below("7a mass balance residual (n=" + std::to_string(n_base) + ")", base.mass_resid,
              bound);
    rec.below("7b mass balance residual decreases under refinement (ratio)",
              fine.mass_resid / base.mass_resid, 0.8);
}

double oracle_gap_run(int n) {
    const Params& p = kSuper;
    const Grid g = reference_grid(p, n);
    const Density u0 = bump_density(g, Frame::original, 10.0, 2.0, 1.0);
    const double Vf = 4.0; // frozen monomer level; omega = tau*V = 4 (disease speed)
    const double omega = p.tau * Vf;

    PideOptions opts;
    opts.freeze_V = true;
    opts.dt = 0.25 * g.dx() / omega;
    const PideRun up = integrate_pide(p, {0.0, Vf, u0}, 5.0, g, opts);

    const auto [U0, q0plus] = moments(u0);
    const double q0 = q0plus - p.x0 * U0;
    const double mu0 = p.mu0();
    const auto boundary = [&](double s) {
        return evolve_moment_pair(mu0, p.beta, omega, U0, q0, s).second;
    };
    const OmegaPath w = OmegaPath::constant(omega, 5.0);
    const auto fields = solve_v_characteristics(p, w, u0, boundary, {5.0});
    const Density uc = recover_u(fields.front());

    return rel_weighted_gap(up.final_state().u, uc, mu0 / p.beta);
}

void criterion_4(Recorder& rec, int n_base) {
    const double base = oracle_gap_run(n_base);
    const double fine = oracle_gap_run(2 * n_base);
    rec.below("4a oracle equivalence upwind vs characteristics (t=5, n=" +
                  std::to_string(n_base) + ")",
              base, 5e-2);
    rec.below("4b oracle gap halves under refinement (ratio)", fine / base, 0.75);
}

void criterion_5(Recorder& rec, int reps) {
    const Grid fine(0.0, 50.0, 20000);
    const OperatorContext ctx_fine = OperatorContext::for_params(kSuper, Regime::disease, fine);
    {
        const auto k = kernel_e(ctx_fine);
        const Density de = kernel_e_derivative(ctx_fine);
        const Density Le = apply_L(ctx_fine, k.e, de);
        rec.below("5a kernel residual |L e| (weighted)", weighted_norm(Le, ctx_fine.a), 1e-6);
        rec.below("5b kernel normalization |int (a+x) e - 1|", std::abs(k.normalization - 1.0),
                  1e-6);
    }
    {
        const Grid g(0.0, 50.0, 2000);
        const OperatorContext ctx = OperatorContext::for_params(kSuper, Regime::disease, g);
        std::mt19937 rng(2024);
        double worst = 0.0;
        for (int r = 0; r < reps; ++r) {
            Density u = random_density(g, Frame::shifted, rng);
            const Density pu = ergodic_projection(ctx, u);
            const Density ppu = ergodic_projection(ctx, pu);
            double diff = 0.0;
            for (std::size_t i = 0; i < u.values.size(); ++i) {
                const double wt = g.weight(i) * (ctx.a + g.node(i));
                diff += wt * std::abs(ppu.values[i] - pu.values[i]);
            }
            worst = std::max(worst, diff);
        }
        rec.below("5c projection idempotence (" + std::to_string(reps) + " random u)", worst,
                  1e-10);
    }
    {
        const Grid g(0.0, 50.0, 4000);
        const OperatorContext ctx = OperatorContext::for_params(kSuper, Regime::disease, g);
        const double lam = 1.0;
        const Density f = bump_density(g, Frame::shifted, 8.0, 6.0, 1.0);
        const Density u = resolvent_A(ctx, lam, f);
        // residual of lam u + omega u' + (mu0 + beta x) u - f with centered u'
        Density resid(g, Frame::shifted);
        for (std::size_t i = 1; i + 1 < g.size(); ++i) {
            const double du = (u.values[i + 1] - u.values[i - 1]) / (2.0 * g.dx());
            resid.values[i] = lam * u.values[i] + ctx.omega * du +
                              (ctx.mu0 + ctx.beta * g.node(i)) * u.values[i] - f.values[i];
        }
        rec.below("5d resolvent round-trip residual (n=4000, rel)",
                  weighted_norm(resid, ctx.a) / weighted_norm(f, ctx.a), 1e-3);

        std::mt19937 rng(7);
        double worst = -1.0;
        for (int r = 0; r < reps; ++r) {
            const Density fr = random_density(g, Frame::shifted, rng);
            const Density ur = resolvent_A(ctx, lam, fr);
            if (!ur.nonnegative())
                worst = std::max(worst, 1.0); // positivity broken counts as violation
            const double l1u = trapezoid(ur);
            const double l1f = trapezoid(fr);
            worst = std::max(worst, l1u - l1f / (lam + ctx.mu0));
        }
        rec.below("5e resolvent L1 bound violations (" + std::to_string(reps) + " random f)",
                  worst, 0.0);
    }
}

void criterion_6(Recorder& rec) {
    // independent trapezoid quadrature of the Phi moments on [0, 20]
    const int n = 20000;
    const double h = 20.0 / n;
    double m0 = 0.0, m1 = 0.0;
    for (int i = 0; i <= n; ++i) {
        const double z = i * h;
        const double w = (i == 0 || i == n) ? 0.5 * h : h;
        m0 += w * phi(z);
        m1 += w * z * phi(z);
    }
    rec.below("6a |int Phi - 1/2|", std::abs(m0 - 0.5), 1e-6);
    rec.below("6b |int z Phi - 1/2|", std::abs(m1 - 0.5), 1e-6);
    rec.below("6c |int (1+z) Phi - 1|", std::abs(m0 + m1 - 1.0), 2e-6);

    const Grid g = default_grid(kSuper, 10000);
    const Density us = stationary_density(kSuper, g);
    const auto [U, P] = moments(us);
    const OdeState eq = disease_equilibrium_ode(kSuper);
    const double err = std::max(std::abs(U - eq.U) / eq.U, std::abs(P - eq.P) / eq.P);
    rec.below("6d stationary density moments vs (U*, P*) (rel)", err, 1e-4);
}

void criterion_8(Recorder& rec, int reps, int picard_n) {
    // positivity across representative runs
    {
        const Grid g = reference_grid(kSuper, 1000);
        const Density ustar = stationary_density(kSuper, g);
        Density u0(g, Frame::original);
        for (std::size_t i = 0; i < g.size(); ++i) u0.values[i] = 0.5 * ustar.values[i];
        PideOptions opts;
        opts.snapshot_every = 2000;
        const PideRun run = integrate_pide(kSuper, {0.0, 4.0, u0}, 30.0, g, opts);
        double mn = 0.0;
        for (const auto& s : run.snapshots) mn = std::min(mn, s.u.min_value());
        rec.above("8a positivity preservation (min density)", mn, -1e-10);
    }
    // U0 contraction at dt = 1 in the disease context
    {
        const Grid g(0.0, 50.0, 2000);
        const DecayCoefficients c{kSuper.mu0(), kSuper.beta};
        const double omega = c.mu0 * c.mu0 / c.beta;
        const OmegaPath w = OmegaPath::constant(omega, 1.0);
        const double a = c.mu0 / c.beta;
        std::mt19937 rng(11);
        double worst = 0.0;
        for (int r = 0; r < reps; ++r) {
            const Density gdens = random_density(g, Frame::shifted, rng);
            const Density out = U0_apply(c, w, 0.0, 1.0, gdens);
            worst = std::max(worst, weighted_norm(out, a) / weighted_norm(gdens, a));
        }
        rec.below("8b U0 contraction factor (dt=1, " + std::to_string(reps) + " random g)",
                  worst, std::exp(-c.mu0) + 1e-6);
    }
    // Picard monotonicity
    {
        const Grid g(0.0, 25.0, picard_n);
        const DecayCoefficients c{kSub.mu0(), kSub.beta};
        const OmegaPath w = OmegaPath::constant(1.0, 1.0);
        const Density gdens = bump_density(g, Frame::shifted, 5.0, 2.0, 1.0);
        const auto iters = picard_iterate(c, w, 0.0, gdens, 1.0, 25);
        double slack = 0.0;
        for (std::size_t k = 1; k < iters.size(); ++k)
            for (std::size_t i = 0; i < iters[k].values.size(); ++i)
                slack = std::min(slack, iters[k].values[i] - iters[k - 1].values[i]);
        rec.above("8c picard monotonicity slack", slack, -1e-12);
    }
    // finite speed of propagation at unit CFL
    {
        const Grid g = reference_grid(kSuper, 2000);
        const Density u0 = bump_density(g, Frame::original, 8.0, 2.0, 1.0);
        double sup0 = g.x_left();
        for (std::size_t i = 0; i < g.size(); ++i)
            if (u0.values[i] > 0.0) sup0 = g.node(i);
        const double Vf = 4.0;
        PideOptions opts;
        opts.freeze_V = true;
        opts.dt = g.dx() / (kSuper.tau * Vf); // unit CFL: transport is an exact shift
        const double T = 5.0;
        const PideRun run = integrate_pide(kSuper, {0.0, Vf, u0}, T, g, opts);
        double sup_t = g.x_left();
        for (std::size_t i = 0; i < g.size(); ++i)
            if (run.final_state().u.values[i] > 0.0) sup_t = g.node(i);
        const double excess = sup_t - (sup0 + kSuper.tau * Vf * T);
        rec.below("8d finite speed: support growth beyond omega*t (cells)", excess / g.dx(),
                  1.0 + 1e-9);
    }
}

void criterion_9(Recorder& rec) {
    const Params& p = kSuper;
    const OdeState eq = disease_equilibrium_ode(p);
    const double coeff = p.mu * eq.U / p.beta + eq.P;

    const Grid g = default_grid(p, 10000);
    const Density us = stationary_density(p, g).to_frame(Frame::shifted, p.x0);

    const Grid gs(0.0, g.x_max() - p.x0, g.n());
    const OperatorContext ctx = OperatorContext::for_params(p, Regime::disease, gs);
    const auto k = kernel_e(ctx);
    Density uinf(gs, Frame::shifted);
    for (std::size_t i = 0; i < gs.size(); ++i) uinf.values[i] = coeff * k.e.values[i];

    rec.below("9 stationary density equals (mu U*/beta + P*) e (rel)",
              rel_weighted_gap(uinf, us, ctx.a), 1e-4);
}

} // namespace

VerificationReport verify_suite(VerifyLevel level) noexcept {
    VerificationReport report;
    report.level = level;
    const auto t0 = Clock::now();

    const bool full = level == VerifyLevel::full;
    const int n_ref = 2000;
    const int n_refine_base = full ? 2000 : 1000;
    const int reps = full ? 100 : 20;
    const int picard_n = full ? 800 : 400;

    Recorder rec{report.checks};
    auto guarded = [&](const char* what, const std::function<void()>& fn) {
        try {
            fn();
        } catch (const std::exception& e) {
            rec.failed(what, e.what());
        }
    };

    guarded("criterion 1", [&] { criterion_1(rec); });
    guarded("criterion 2", [&] { criterion_2(rec, n_ref); });
    guarded("criteria 3+7", [&] { criteria_3_and_7(rec, n_refine_base); });
    guarded("criterion 4", [&] { criterion_4(rec, n_refine_base); });
    guarded("criterion 5", [&] { criterion_5(rec, reps); });
    guarded("criterion 6", [&] { criterion_6(rec); });
    guarded("criterion 8", [&] { criterion_8(rec, reps, picard_n); });
    guarded("criterion 9", [&] { criterion_9(rec); });

    report.overall_pass = true;
    for (const auto& c : report.checks)
        if (!c.logged_only && !c.pass) report.overall_pass = false;
    report.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    return report;
}

std::string report_lines(const VerificationReport& report) {
    std::ostringstream out;
    for (const auto& c : report.checks) {
        const char* tag = c.logged_only ? "[ LOG]" : (c.pass ? "[PASS]" : "[FAIL]");
        out << tag << " " << c.name << ": measured " << format_double(c.measured);
        if (!c.logged_only) out << " vs bound " << format_double(c.bound);
        if (!c.note.empty()) out << "  (" << c.note << ")";
        out << "\n";
    }
    out << (report.overall_pass ? "OVERALL: PASS" : "OVERALL: FAIL") << " ("
        << format_double(report.seconds) << " s, "
        << (report.level == VerifyLevel::full ? "full" : "quick") << ")\n";
    return out.str();
}

std::string report_json(const VerificationReport& report) {
    nlohmann::ordered_json j;
    j["level"] = report.level == VerifyLevel::full ? "full" : "quick";
    j["overall"] = report.overall_pass ? "pass" : "fail";
    j["runtime_seconds"] = report.seconds;
    j["checks"] = nlohmann::ordered_json::array();
    for (const auto& c : report.checks) {
        nlohmann::ordered_json e;
        e["name"] = c.name;
        e["status"] = c.logged_only ? "logged" : (c.pass ? "pass" : "fail");
        e["measured"] = c.measured;
        if (!c.logged_only) e["bound"] = c.bound;
        if (!c.note.empty()) e["note"] = c.note;
        e["runtime_seconds"] = c.seconds;
        j["checks"].push_back(e);
    }
    return j.dump(2) + "\n";
}

} // namespace prion
