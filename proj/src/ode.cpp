#include "prion/ode.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "prion/errors.hpp"

namespace prion {

OdeState ode_rhs(const OdeState& s, const Params& p) {
    OdeState d;
    d.U = p.beta * s.P - p.mu * s.U - 2.0 * p.beta * p.x0 * s.U;
    d.V = p.lambda - p.gamma * s.V - p.tau * s.U * s.V + p.beta * p.x0 * p.x0 * s.U;
    d.P = p.tau * s.U * s.V - p.mu * s.P - p.beta * p.x0 * p.x0 * s.U;
    return d;
}

namespace {

using Vec3 = std::array<double, 3>;

Vec3 to_vec(const OdeState& s) { return {s.U, s.V, s.P}; }
OdeState to_state(const Vec3& v) { return {v[0], v[1], v[2]}; }

Vec3 rhs(const Vec3& y, const Params& p) {
    return to_vec(ode_rhs(to_state(y), p));
}

Vec3 axpy(const Vec3& y, double h, const Vec3& k) {
    return {y[0] + h * k[0], y[1] + h * k[1], y[2] + h * k[2]};
}

// Dormand-Prince 5(4) tableau (the system is autonomous, so the c nodes
// never appear explicitly).
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

OdeState clamp_to_cone(const OdeState& s, double x0, double t) {
    constexpr double slack = 1e-10;
    auto clamp1 = [&](double v, const char* name) {
        if (v >= 0.0) return v;
        if (v > -slack) return 0.0;
        throw NegativeDensity(std::string(name) + " = " + std::to_string(v) +
                              " left the cone at t = " + std::to_string(t));
    };
    OdeState out;
    out.U = clamp1(s.U, "U");
    out.V = clamp1(s.V, "V");
    out.P = clamp1(s.P, "P");
    const double gap = out.P - x0 * out.U;
    if (gap < 0.0) {
        if (gap <= -slack)
            throw NegativeDensity("P - x0*U = " + std::to_string(gap) +
                                  " left the cone at t = " + std::to_string(t));
        out.P = x0 * out.U;
    }
    return out;
}

} // namespace

OdeTrajectory integrate_ode(const Params& p, const OdeState& init, double t_end,
                            const IntegrateOptions& opts) {
    validate(p);
    if (!(t_end > 0.0)) throw ValidationError("t_end must be positive");
    if (init.U < 0.0 || init.V < 0.0 || init.P < p.x0 * init.U - 1e-12)
        throw ValidationError("initial state must lie in the cone K");

    OdeTrajectory traj;
    traj.params = p;
    traj.times.push_back(0.0);
    traj.states.push_back(clamp_to_cone(init, p.x0, 0.0));

    Vec3 y = to_vec(init);
    double t = 0.0;
    double h = std::min(opts.max_step, 1e-3 * t_end);
    Vec3 k1 = rhs(y, p);
    const double h_min = 1e-14 * std::max(1.0, t_end);

    while (t < t_end) {
        h = std::min({h, opts.max_step, t_end - t});
        if (h < h_min) throw ToleranceNotMet("step size underflow at t = " + std::to_string(t));

        const Vec3 k2 = rhs(axpy(y, h * a21, k1), p);
        Vec3 tmp = y;
        for (int i = 0; i < 3; ++i) tmp[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
        const Vec3 k3 = rhs(tmp, p);
        for (int i = 0; i < 3; ++i) tmp[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
        const Vec3 k4 = rhs(tmp, p);
        for (int i = 0; i < 3; ++i)
            tmp[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
        const Vec3 k5 = rhs(tmp, p);
        for (int i = 0; i < 3; ++i)
            tmp[i] = y[i] +
                     h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
        const Vec3 k6 = rhs(tmp, p);
        Vec3 y5;
        for (int i = 0; i < 3; ++i)
            y5[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
        const Vec3 k7 = rhs(y5, p); // FSAL stage

        double err = 0.0;
        for (int i = 0; i < 3; ++i) {
            const double ei = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] +
                                   e6 * k6[i] + e7 * k7[i]);
            const double sc = opts.abs_tol + opts.rel_tol * std::max(std::abs(y[i]), std::abs(y5[i]));
            err = std::max(err, std::abs(ei) / sc);
        }

        if (err <= 1.0) {
            t += h;
            y = y5;
            k1 = k7;
            traj.times.push_back(t);
            traj.states.push_back(clamp_to_cone(to_state(y), p.x0, t));
        }
        const double factor =
            std::clamp(0.9 * std::pow(std::max(err, 1e-16), -0.2), 0.2, 5.0);
        h *= factor;
    }
    return traj;
}

} // namespace prion
