#include "prion/characteristics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "prion/errors.hpp"
#include "prion/interp.hpp"

namespace prion {

MonotoneCubic::MonotoneCubic(double x_left, double dx, std::vector<double> y)
    : x_left_(x_left), dx_(dx), y_(std::move(y)) {
    if (y_.size() < 2 || !(dx > 0.0)) throw ValidationError("interpolant needs >= 2 samples");
    const std::size_t n = y_.size();
    m_.assign(n, 0.0);
    auto secant = [&](std::size_t i) { return (y_[i + 1] - y_[i]) / dx_; };
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double sl = secant(i - 1), sr = secant(i);
        if (sl * sr <= 0.0) {
            m_[i] = 0.0;
        } else {
            const double p = 0.5 * (sl + sr);
            const double lim = 2.0 * std::min(std::abs(sl), std::abs(sr));
            m_[i] = (std::abs(p) > lim) ? std::copysign(lim, p) : p;
        }
    }
    // ends: one-sided estimate limited against the first secant
    auto end_slope = [&](double s_near, double s_far) {
        double p = 1.5 * s_near - 0.5 * s_far;
        if (p * s_near <= 0.0) return 0.0;
        if (std::abs(p) > 2.0 * std::abs(s_near)) return 2.0 * s_near;
        return p;
    };
    m_[0] = end_slope(secant(0), n > 2 ? secant(1) : secant(0));
    m_[n - 1] = end_slope(secant(n - 2), n > 2 ? secant(n - 3) : secant(n - 2));
}

double MonotoneCubic::operator()(double x) const {
    const double span = dx_ * static_cast<double>(y_.size() - 1);
    const double rel = x - x_left_;
    if (rel < 0.0 || rel > span) return 0.0;
    std::size_t j = std::min(static_cast<std::size_t>(rel / dx_), y_.size() - 2);
    const double th = rel - static_cast<double>(j) * dx_;
    const double d = (y_[j + 1] - y_[j]) / dx_;
    const double c2 = (3.0 * d - 2.0 * m_[j] - m_[j + 1]) / dx_;
    const double c3 = (m_[j] + m_[j + 1] - 2.0 * d) / (dx_ * dx_);
    return y_[j] + th * (m_[j] + th * (c2 + th * c3));
}

VField v_transform(const Density& u) {
    VField v{u.grid, std::vector<double>(u.grid.size(), 0.0), 0.0, u.frame};
    const auto s = suffix_integral(u);
    const double half = 0.5 * u.grid.dx();
    for (std::size_t i = v.values.size() - 1; i-- > 0;)
        v.values[i] = v.values[i + 1] + half * (s[i] + s[i + 1]);
    return v;
}

Density recover_u(const VField& v) {
    const std::size_t m = v.values.size();
    if (m < 3) throw ValidationError("recover_u needs at least 3 nodes");
    const double inv2 = 1.0 / (v.grid.dx() * v.grid.dx());
    Density u(v.grid, v.frame);
    for (std::size_t i = 1; i + 1 < m; ++i)
        u.values[i] = (v.values[i - 1] - 2.0 * v.values[i] + v.values[i + 1]) * inv2;
    u.values[0] = (v.values[0] - 2.0 * v.values[1] + v.values[2]) * inv2;
    u.values[m - 1] = (v.values[m - 3] - 2.0 * v.values[m - 2] + v.values[m - 1]) * inv2;

    double neg_mass = 0.0, total_mass = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const double w = u.grid.weight(i);
        total_mass += w * std::abs(u.values[i]);
        if (u.values[i] < 0.0) {
            neg_mass += w * (-u.values[i]);
            u.values[i] = 0.0;
        }
    }
    if (neg_mass > 1e-6 * std::max(total_mass, 1e-300))
        throw NoiseDominated("clamped negative mass " + std::to_string(neg_mass) +
                             " exceeds 1e-6 of total " + std::to_string(total_mass));
    return u;
}

double rho_inverse(const OmegaPath& w, double s, double t, double x) {
    if (!(s <= t)) throw ValidationError("rho_inverse needs s <= t");
    if (!(x > 0.0)) throw ValidationError("rho_inverse needs x > 0");
    const double full = w.integral(s, t);
    if (x >= full)
        throw OutOfBoundaryRegion("x = " + std::to_string(x) + " >= int omega = " +
                                  std::to_string(full));
    // F(rho) = int_rho^t omega - x is strictly decreasing with a sign
    // change on [s, t]; bisect, then polish with Newton.
    double lo = s, hi = t;
    const double tol = 1e-12 * std::max(1.0, x);
    double rho = 0.5 * (lo + hi);
    for (int it = 0; it < 200; ++it) {
        const double f = w.integral(rho, t) - x;
        if (std::abs(f) < tol) return rho;
        if (f > 0.0)
            lo = rho;
        else
            hi = rho;
        const double deriv = -w.omega(rho);
        double next = rho - f / deriv;
        if (!(next > lo) || !(next < hi)) next = 0.5 * (lo + hi);
        rho = next;
    }
    return rho;
}

CharacteristicTrace trace_characteristic(double mu_coef, double beta, double x_left,
                                         const OmegaPath& w, double s, double t, double x) {
    CharacteristicTrace tr{};
    const double travel = w.integral(s, t);
    const double back = x - travel;
    if (back >= x_left) {
        tr.kind = CharacteristicTrace::FootKind::initial_data;
        tr.foot_time = s;
        tr.foot_position = back;
        tr.decay_exponent =
            mu_coef * (t - s) + beta * (x * (t - s) - w.weighted_integral(s, t, s));
    } else {
        tr.kind = CharacteristicTrace::FootKind::boundary;
        const double rho = (x <= x_left) ? t : rho_inverse(w, s, t, x - x_left);
        tr.foot_time = rho;
        tr.foot_position = x_left;
        tr.decay_exponent =
            mu_coef * (t - rho) + beta * (x * (t - rho) - w.weighted_integral(rho, t, rho));
    }
    return tr;
}

Density U0_apply(const DecayCoefficients& c, const OmegaPath& w, double s, double t,
                 const Density& g) {
    if (!(s <= t)) throw ValidationError("U0_apply needs s <= t");
    const double travel = w.integral(s, t);
    const double dt = t - s;
    // phi(x) = mu0 dt + beta dt (x - travel) + beta int_s^t (t-r) omega dr
    const double tail = -w.weighted_integral(s, t, t); // int (t - r) omega dr
    const MonotoneCubic interp(g.grid.x_left(), g.grid.dx(), g.values);
    Density out(g.grid, g.frame);
    for (std::size_t i = 0; i < out.values.size(); ++i) {
        const double foot = g.grid.node(i) - travel;
        const double gv = interp(foot);
        if (gv == 0.0) continue;
        const double phi =
            c.mu0 * dt + c.beta * dt * (foot - g.grid.x_left()) + c.beta * tail;
        out.values[i] = gv * std::exp(-phi);
    }
    return out;
}

Density V0_apply(const DecayCoefficients& c, const OmegaPath& w, double s, double t,
                 const std::function<double(double)>& h, const Grid& g) {
    if (!(s <= t)) throw ValidationError("V0_apply needs s <= t");
    const double travel = w.integral(s, t);
    Density out(g, Frame::shifted);
    for (std::size_t i = 0; i < out.values.size(); ++i) {
        const double x = g.node(i) - g.x_left();
        if (x >= travel) continue;
        const double rho = (x <= 0.0) ? t : rho_inverse(w, s, t, x);
        const double span = t - rho;
        const double K = w.weighted_integral(rho, t, rho);
        const double expo = c.mu0 * span + c.beta * (x * span - K);
        out.values[i] = h(rho) * std::exp(-expo);
    }
    return out;
}

namespace {

/// v, its slope and the underlying density evaluated anywhere, built so
/// that the three stay exactly consistent: u is the piecewise-linear
/// interpolant of the samples, S its exact suffix integral and v the
/// exact double suffix integral. v is then C^2 with v'' = u >= 0.
class IntegratedDensity {
public:
    explicit IntegratedDensity(const Density& u)
        : x_left_(u.grid.x_left()), dx_(u.grid.dx()), u_(u.values), s_(suffix_integral(u)) {
        const VField v = v_transform(u);
        v_ = v.values;
    }

    double eval_v(double x) const {
        const double span = dx_ * static_cast<double>(u_.size() - 1);
        double rel = x - x_left_;
        if (rel >= span) return 0.0;
        if (rel < 0.0) return v_[0] - rel * s_[0]; // density vanishes left of the grid
        std::size_t j = std::min(static_cast<std::size_t>(rel / dx_), u_.size() - 2);
        const double th = rel - static_cast<double>(j) * dx_;
        const double du = (u_[j + 1] - u_[j]) / dx_;
        return v_[j] + th * (-s_[j] + th * (0.5 * u_[j] + th * du / 6.0));
    }

private:
    double x_left_, dx_;
    std::vector<double> u_, s_, v_;
};

} // namespace

std::vector<VField> solve_v_on_grid(double mu_coef, double beta, const OmegaPath& w,
                                    const Density& u0,
                                    const std::function<double(double)>& boundary,
                                    const std::vector<double>& times) {
    const IntegratedDensity v0(u0);
    const double x_left = u0.grid.x_left();
    std::vector<VField> out;
    out.reserve(times.size());
    for (double t : times) {
        VField vt{u0.grid, std::vector<double>(u0.grid.size(), 0.0), t, u0.frame};
        for (std::size_t i = 0; i < vt.values.size(); ++i) {
            const auto tr =
                trace_characteristic(mu_coef, beta, x_left, w, 0.0, t, u0.grid.node(i));
            const double data = (tr.kind == CharacteristicTrace::FootKind::initial_data)
                                    ? v0.eval_v(tr.foot_position)
                                    : boundary(tr.foot_time);
            vt.values[i] = data * std::exp(-tr.decay_exponent);
        }
        out.push_back(std::move(vt));
    }
    return out;
}

std::vector<VField> solve_v_characteristics(const Params& p, const OmegaPath& w,
                                            const Density& u0,
                                            const std::function<double(double)>& boundary,
                                            const std::vector<double>& times) {
    validate(p);
    if (u0.frame != Frame::original)
        throw ValidationError("solve_v_characteristics expects an original-frame density");
    return solve_v_on_grid(p.mu, p.beta, w, u0, boundary, times);
}

std::vector<Density> picard_iterate(const DecayCoefficients& c, const OmegaPath& w, double s,
                                    const Density& g, double t, int n_iter, int n_time_nodes) {
    if (!(t > s)) throw ValidationError("picard_iterate needs t > s");
    if (n_iter < 1) throw ValidationError("picard_iterate needs n_iter >= 1");
    if (n_time_nodes < 64) throw ValidationError("picard time grid needs >= 64 nodes");
    if (!g.nonnegative(0.0)) throw ValidationError("picard_iterate expects g >= 0");

    const int m = n_time_nodes;
    const double dr = (t - s) / static_cast<double>(m - 1);
    std::vector<double> nodes(m);
    for (int j = 0; j < m; ++j) nodes[j] = s + dr * j;

    // family of iterates over the time grid
    std::vector<Density> u1;
    u1.reserve(m);
    for (int j = 0; j < m; ++j) u1.push_back(U0_apply(c, w, s, nodes[j], g));

    std::vector<Density> current = u1;
    std::vector<Density> iterates_at_t;
    iterates_at_t.push_back(current.back());

    const double a = c.mu0 / c.beta;
    const auto apply_B = [&](const Density& d) {
        Density out(d.grid, d.frame);
        const auto suf = suffix_integral(d);
        for (std::size_t i = 0; i < suf.size(); ++i) out.values[i] = 2.0 * c.beta * suf[i];
        return out;
    };
    for (int n = 1; n < n_iter; ++n) {
        // gains of the current family
        std::vector<Density> gains;
        gains.reserve(m);
        for (int k = 0; k < m; ++k) gains.push_back(apply_B(current[k]));

        std::vector<Density> next = u1;
        for (int j = 1; j < m; ++j) {
            for (int k = 0; k <= j; ++k) {
                const double wt = (k == 0 || k == j) ? 0.5 * dr : dr;
                const Density prop = U0_apply(c, w, nodes[k], nodes[j], gains[k]);
                for (std::size_t i = 0; i < next[j].values.size(); ++i)
                    next[j].values[i] += wt * prop.values[i];
            }
        }
        double diff = 0.0;
        for (std::size_t i = 0; i < next.back().values.size(); ++i) {
            const double xt = g.grid.node(i) - g.grid.x_left();
            diff += g.grid.weight(i) * (a + xt) *
                    std::abs(next.back().values[i] - current.back().values[i]);
        }
        current = std::move(next);
        iterates_at_t.push_back(current.back());
        if (diff < 1e-12) break;
    }
    return iterates_at_t;
}

} // namespace prion
