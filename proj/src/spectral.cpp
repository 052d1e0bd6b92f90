#include "prion/spectral.hpp"

#include <cmath>
#include <string>

#include "prion/characteristics.hpp"
#include "prion/errors.hpp"
#include "prion/phi.hpp"

namespace prion {

OperatorContext::OperatorContext(double omega_, double mu0_, double beta_, double a_, Grid grid_)
    : omega(omega_), mu0(mu0_), beta(beta_), a(a_), grid(std::move(grid_)) {
    if (!(omega > 0.0 && mu0 > 0.0 && beta > 0.0 && a > 0.0))
        throw ValidationError("operator context needs positive omega, mu0, beta, a");
    if (grid.x_left() != 0.0)
        throw ValidationError("operator context grid must start at 0 (shifted frame)");
}

bool OperatorContext::disease_case(double tol) const {
    return std::abs(beta * omega - mu0 * mu0) <= tol * std::max(1.0, mu0 * mu0);
}

OperatorContext OperatorContext::for_params(const Params& p, Regime regime, const Grid& g) {
    const auto d = derive_constants(p, regime);
    return OperatorContext(d.omega_inf, d.mu0, p.beta, d.a, g);
}

Density apply_L(const OperatorContext& ctx, const Density& u, const Density& du) {
    if (!u.grid.same_as(ctx.grid) || !du.grid.same_as(ctx.grid))
        throw ValidationError("apply_L grid mismatch");
    Density out(ctx.grid, u.frame);
    const auto suffix = suffix_integral(u);
    for (std::size_t i = 0; i < out.values.size(); ++i) {
        const double x = ctx.grid.node(i) - ctx.grid.x_left();
        out.values[i] = ctx.omega * du.values[i] + (ctx.mu0 + ctx.beta * x) * u.values[i] -
                        2.0 * ctx.beta * suffix[i];
    }
    return out;
}

Density resolvent_A(const OperatorContext& ctx, double lam, const Density& f) {
    if (!(lam > 0.0)) throw ValidationError("resolvent_A needs lam > 0");
    if (!f.grid.same_as(ctx.grid)) throw ValidationError("resolvent_A grid mismatch");
    // Theta(x) = (lam + mu0) x / omega + beta x^2 / (2 omega); the kernel is
    // exp(Theta(y) - Theta(x)) <= 1 for y <= x, so the running integral
    //   I(x_i) = int_0^{x_i} e^{Theta(y) - Theta(x_i)} f(y) dy
    // obeys I(x_{i+1}) = e^{Theta_i - Theta_{i+1}} I(x_i) + trapezoid piece,
    // with every factor <= 1. No positive exponential is ever formed.
    const double dx = ctx.grid.dx();
    const auto theta = [&](double x) {
        return ((lam + ctx.mu0) * x + 0.5 * ctx.beta * x * x) / ctx.omega;
    };
    Density u(ctx.grid, f.frame);
    double running = 0.0; // I(x_i)
    u.values[0] = 0.0;
    for (std::size_t i = 1; i < u.values.size(); ++i) {
        const double xl = ctx.grid.node(i - 1) - ctx.grid.x_left();
        const double xr = ctx.grid.node(i) - ctx.grid.x_left();
        const double fade = std::exp(theta(xl) - theta(xr));
        running = fade * running +
                  0.5 * dx * (fade * f.values[i - 1] + f.values[i]);
        u.values[i] = running / ctx.omega;
    }
    return u;
}

ResolventLResult resolvent_L(const OperatorContext& ctx, double lam, const Density& f,
                             int n_iter, double tol) {
    ResolventLResult r{Density(ctx.grid, f.frame), {}, false};
    Density u = resolvent_A(ctx, lam, f);
    r.iterates.push_back(u);
    Density rhs(ctx.grid, f.frame);
    for (int n = 1; n < n_iter; ++n) {
        const auto suffix = suffix_integral(u);
        for (std::size_t i = 0; i < rhs.values.size(); ++i)
            rhs.values[i] = f.values[i] + 2.0 * ctx.beta * suffix[i];
        Density next = resolvent_A(ctx, lam, rhs);
        double sup = 0.0;
        for (std::size_t i = 0; i < next.values.size(); ++i)
            sup = std::max(sup, std::abs(next.values[i] - u.values[i]));
        u = std::move(next);
        r.iterates.push_back(u);
        if (sup < tol) {
            r.converged = true;
            break;
        }
    }
    r.u = u;
    return r;
}

KernelElement kernel_e(const OperatorContext& ctx) {
    if (!ctx.disease_case())
        throw NotDiseaseCase("kernel element requires beta*omega = mu0^2");
    const double scale = ctx.beta / ctx.mu0;
    KernelElement k{Density(ctx.grid, Frame::shifted), 0.0};
    for (std::size_t i = 0; i < k.e.values.size(); ++i) {
        const double x = ctx.grid.node(i) - ctx.grid.x_left();
        k.e.values[i] = scale * scale * phi(scale * x);
    }
    k.normalization = weighted_integral(k.e, ctx.a);
    return k;
}

Density kernel_e_derivative(const OperatorContext& ctx) {
    if (!ctx.disease_case())
        throw NotDiseaseCase("kernel element requires beta*omega = mu0^2");
    const double scale = ctx.beta / ctx.mu0;
    Density d(ctx.grid, Frame::shifted);
    for (std::size_t i = 0; i < d.values.size(); ++i) {
        const double x = ctx.grid.node(i) - ctx.grid.x_left();
        d.values[i] = scale * scale * scale * phi_prime(scale * x);
    }
    return d;
}

Density ergodic_projection(const OperatorContext& ctx, const Density& u) {
    if (!u.grid.same_as(ctx.grid)) throw ValidationError("projection grid mismatch");
    const auto k = kernel_e(ctx);
    // dividing by the quadrature normalization (1 + O(dx^2), analytically 1)
    // makes the discrete projection exactly idempotent
    const double coeff = weighted_integral(u, ctx.a) / k.normalization;
    Density out(ctx.grid, u.frame);
    for (std::size_t i = 0; i < out.values.size(); ++i)
        out.values[i] = coeff * k.e.values[i];
    return out;
}

double accretivity_bracket(const OperatorContext& ctx, const Density& u, const Density& du) {
    const Density Lu = apply_L(ctx, u, du);
    double s = 0.0;
    for (std::size_t i = 0; i < u.values.size(); ++i) {
        const double v = u.values[i];
        const double sgn = (v > 0.0) - (v < 0.0);
        if (sgn == 0.0) continue;
        const double x = ctx.grid.node(i) - ctx.grid.x_left();
        s += ctx.grid.weight(i) * (ctx.a + x) * sgn * Lu.values[i];
    }
    return s;
}

std::pair<double, double> evolve_moment_pair(double mu0, double beta, double omega, double z0,
                                             double z1, double t) {
    // eigenvalues -mu0 +- nu with nu = sqrt(beta omega)
    const double nu = std::sqrt(beta * omega);
    const double ep = std::exp((nu - mu0) * t);
    const double em = std::exp(-(nu + mu0) * t);
    const double ch = 0.5 * (ep + em), sh = 0.5 * (ep - em);
    return {z0 * ch + z1 * beta * sh / nu, z0 * omega * sh / nu + z1 * ch};
}

namespace {

Density semigroup_step_nonnegative(const OperatorContext& ctx, const Density& u0, double t) {
    const auto [z0, z1] = moments(u0);
    const auto boundary = [&ctx, z0 = z0, z1 = z1](double s) {
        return evolve_moment_pair(ctx.mu0, ctx.beta, ctx.omega, z0, z1, s).second;
    };
    const OmegaPath w = OmegaPath::constant(ctx.omega, t);
    const auto fields = solve_v_on_grid(ctx.mu0, ctx.beta, w, u0, boundary, {t});
    return recover_u(fields.front());
}

} // namespace

Density semigroup_step(const OperatorContext& ctx, const Density& u0, double t) {
    if (!u0.grid.same_as(ctx.grid)) throw ValidationError("semigroup grid mismatch");
    if (u0.frame != Frame::shifted)
        throw ValidationError("semigroup_step expects a shifted-frame density");
    if (t == 0.0) return u0;
    if (!(t > 0.0)) throw ValidationError("semigroup_step needs t >= 0");

    if (u0.nonnegative(0.0)) return semigroup_step_nonnegative(ctx, u0, t);

    // signed data: propagate the two halves of u = u+ - u- separately,
    // each a genuine density, and recombine by linearity
    Density plus(ctx.grid, u0.frame), minus(ctx.grid, u0.frame);
    for (std::size_t i = 0; i < u0.values.size(); ++i) {
        if (u0.values[i] >= 0.0)
            plus.values[i] = u0.values[i];
        else
            minus.values[i] = -u0.values[i];
    }
    const Density tp = semigroup_step_nonnegative(ctx, plus, t);
    const Density tm = semigroup_step_nonnegative(ctx, minus, t);
    Density out(ctx.grid, u0.frame);
    for (std::size_t i = 0; i < out.values.size(); ++i)
        out.values[i] = tp.values[i] - tm.values[i];
    return out;
}

} // namespace prion
