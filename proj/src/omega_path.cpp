#include "prion/omega_path.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "prion/errors.hpp"

namespace prion {

CubicSeries::CubicSeries(std::vector<double> t, std::vector<double> y,
                         std::vector<double> slope)
    : t_(std::move(t)), y_(std::move(y)), m_(std::move(slope)) {
    if (t_.size() < 2 || t_.size() != y_.size() || t_.size() != m_.size())
        throw ValidationError("cubic series needs matching times/values/slopes, >= 2 knots");
    for (std::size_t i = 1; i < t_.size(); ++i)
        if (!(t_[i] > t_[i - 1])) throw ValidationError("cubic series times must increase");

    cum_.assign(t_.size(), 0.0);
    cum_mom_.assign(t_.size(), 0.0);
    for (std::size_t j = 1; j < t_.size(); ++j) {
        const double h = t_[j] - t_[j - 1];
        cum_[j] = cum_[j - 1] + partial_integral(j - 1, h);
        cum_mom_[j] = cum_mom_[j - 1] + partial_moment(j - 1, h);
    }
}

CubicSeries CubicSeries::from_samples(std::vector<double> t, std::vector<double> y) {
    const std::size_t n = t.size();
    if (n < 2) throw ValidationError("cubic series needs >= 2 samples");
    std::vector<double> m(n);
    if (n == 2) {
        m[0] = m[1] = (y[1] - y[0]) / (t[1] - t[0]);
    } else {
        for (std::size_t i = 1; i + 1 < n; ++i) {
            const double hl = t[i] - t[i - 1], hr = t[i + 1] - t[i];
            const double dl = (y[i] - y[i - 1]) / hl, dr = (y[i + 1] - y[i]) / hr;
            m[i] = (hr * dl + hl * dr) / (hl + hr);
        }
        // one-sided quadratic at the ends
        {
            const double h0 = t[1] - t[0], h1 = t[2] - t[1];
            const double d0 = (y[1] - y[0]) / h0, d1 = (y[2] - y[1]) / h1;
            m[0] = d0 + (d0 - d1) * h0 / (h0 + h1);
            const double hn = t[n - 1] - t[n - 2], hm = t[n - 2] - t[n - 3];
            const double dn = (y[n - 1] - y[n - 2]) / hn, dm = (y[n - 2] - y[n - 3]) / hm;
            m[n - 1] = dn + (dn - dm) * hn / (hn + hm);
        }
    }
    return CubicSeries(std::move(t), std::move(y), std::move(m));
}

std::size_t CubicSeries::interval(double t) const {
    if (t <= t_.front()) return 0;
    if (t >= t_.back()) return t_.size() - 2;
    const auto it = std::upper_bound(t_.begin(), t_.end(), t);
    return static_cast<std::size_t>(it - t_.begin()) - 1;
}

// Hermite coefficients on interval j in the local variable theta = t - t_j:
//   y(theta) = y_j + m_j theta + c2 theta^2 + c3 theta^3
namespace {
struct Coef {
    double c2, c3;
};
inline Coef hermite_coefs(double h, double y0, double y1, double m0, double m1) {
    const double d = (y1 - y0) / h;
    return {(3.0 * d - 2.0 * m0 - m1) / h, (m0 + m1 - 2.0 * d) / (h * h)};
}
} // namespace

double CubicSeries::operator()(double t) const {
    const std::size_t j = interval(t);
    const double h = t_[j + 1] - t_[j];
    const double th = std::clamp(t, t_.front(), t_.back()) - t_[j];
    const auto [c2, c3] = hermite_coefs(h, y_[j], y_[j + 1], m_[j], m_[j + 1]);
    return y_[j] + th * (m_[j] + th * (c2 + th * c3));
}

double CubicSeries::derivative(double t) const {
    const std::size_t j = interval(t);
    const double h = t_[j + 1] - t_[j];
    const double th = std::clamp(t, t_.front(), t_.back()) - t_[j];
    const auto [c2, c3] = hermite_coefs(h, y_[j], y_[j + 1], m_[j], m_[j + 1]);
    return m_[j] + th * (2.0 * c2 + th * 3.0 * c3);
}

double CubicSeries::partial_integral(std::size_t j, double theta) const {
    const double h = t_[j + 1] - t_[j];
    const auto [c2, c3] = hermite_coefs(h, y_[j], y_[j + 1], m_[j], m_[j + 1]);
    return theta * (y_[j] + theta * (m_[j] / 2.0 + theta * (c2 / 3.0 + theta * c3 / 4.0)));
}

double CubicSeries::partial_moment(std::size_t j, double theta) const {
    // integral of (t_j + theta') y(theta') d theta' over [0, theta]
    const double h = t_[j + 1] - t_[j];
    const auto [c2, c3] = hermite_coefs(h, y_[j], y_[j + 1], m_[j], m_[j + 1]);
    const double inner =
        theta * theta *
        (y_[j] / 2.0 + theta * (m_[j] / 3.0 + theta * (c2 / 4.0 + theta * c3 / 5.0)));
    return t_[j] * partial_integral(j, theta) + inner;
}

double CubicSeries::integral_from_front(double t) const {
    const std::size_t j = interval(t);
    const double th = std::clamp(t, t_.front(), t_.back()) - t_[j];
    double v = cum_[j] + partial_integral(j, th);
    if (t > t_.back()) v += (t - t_.back()) * y_.back(); // constant extension
    return v;
}

double CubicSeries::integral(double s, double t) const {
    return integral_from_front(t) - integral_from_front(s);
}

double CubicSeries::moment_integral(double s, double t) const {
    auto from_front = [&](double x) {
        const std::size_t j = interval(x);
        const double th = std::clamp(x, t_.front(), t_.back()) - t_[j];
        double v = cum_mom_[j] + partial_moment(j, th);
        if (x > t_.back())
            v += y_.back() * 0.5 * (x * x - t_.back() * t_.back());
        return v;
    };
    return from_front(t) - from_front(s);
}

OmegaPath::OmegaPath(CubicSeries series, double omega_inf)
    : series_(std::move(series)), omega_inf_(omega_inf) {
    // sample each interval to validate positivity of the interpolant
    omega_min_ = omega_max_ = series_(series_.front_time());
    const auto& ts = series_.times();
    for (std::size_t j = 0; j + 1 < ts.size(); ++j) {
        for (int k = 0; k <= 8; ++k) {
            const double t = ts[j] + (ts[j + 1] - ts[j]) * k / 8.0;
            const double w = series_(t);
            omega_min_ = std::min(omega_min_, w);
            omega_max_ = std::max(omega_max_, w);
        }
    }
    if (!(omega_min_ > 0.0))
        throw ValidationError("omega path must stay strictly positive; min sample " +
                              std::to_string(omega_min_));
}

OmegaPath OmegaPath::constant(double omega0, double t_end, int n_samples) {
    if (!(omega0 > 0.0) || !(t_end > 0.0))
        throw ValidationError("constant omega path needs omega0 > 0 and t_end > 0");
    n_samples = std::max(n_samples, 2);
    std::vector<double> t(n_samples), y(n_samples, omega0), m(n_samples, 0.0);
    for (int i = 0; i < n_samples; ++i) t[i] = t_end * i / (n_samples - 1.0);
    return OmegaPath(CubicSeries(std::move(t), std::move(y), std::move(m)), omega0);
}

OmegaPath omega_path_from_trajectory(const OdeTrajectory& traj, Regime regime,
                                     double terminal_tol) {
    if (traj.times.size() < 2) throw ValidationError("trajectory too short for omega path");
    const auto d = derive_constants(traj.params, regime);
    const double tau = traj.params.tau;

    std::vector<double> t = traj.times, w(traj.times.size()), slope(traj.times.size());
    for (std::size_t i = 0; i < t.size(); ++i) {
        w[i] = tau * traj.states[i].V;
        slope[i] = tau * ode_rhs(traj.states[i], traj.params).V;
    }
    const double gap = std::abs(w.back() - d.omega_inf);
    if (gap > terminal_tol)
        throw NotConverged("terminal |tau*V - omega_inf| = " + std::to_string(gap) +
                           " exceeds " + std::to_string(terminal_tol));
    return OmegaPath(CubicSeries(std::move(t), std::move(w), std::move(slope)), d.omega_inf);
}

CubicSeries boundary_moment_series(const OdeTrajectory& traj) {
    if (traj.times.size() < 2) throw ValidationError("trajectory too short");
    const double x0 = traj.params.x0;
    std::vector<double> t = traj.times, q(traj.times.size()), slope(traj.times.size());
    for (std::size_t i = 0; i < t.size(); ++i) {
        const auto& s = traj.states[i];
        q[i] = s.P - x0 * s.U;
        const auto d = ode_rhs(s, traj.params);
        slope[i] = d.P - x0 * d.U;
    }
    return CubicSeries(std::move(t), std::move(q), std::move(slope));
}

} // namespace prion
