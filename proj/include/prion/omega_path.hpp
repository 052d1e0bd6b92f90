#pragma once

#include <vector>

#include "prion/ode.hpp"
#include "prion/params.hpp"

namespace prion {

/// Piecewise-cubic Hermite series y(t) on a strictly increasing knot
/// sequence. Values and slopes are prescribed per knot, which makes the
/// interpolant exact to fourth order when the slopes come from the true
/// derivative (the ODE right-hand side supplies them exactly).
class CubicSeries {
public:
    CubicSeries() = default;
    CubicSeries(std::vector<double> t, std::vector<double> y, std::vector<double> slope);

    /// Builds slopes from three-point finite differences of the samples.
    static CubicSeries from_samples(std::vector<double> t, std::vector<double> y);

    double front_time() const { return t_.front(); }
    double back_time() const { return t_.back(); }
    std::size_t knots() const { return t_.size(); }

    /// Evaluates the series; t is clamped to the covered span.
    double operator()(double t) const;
    double derivative(double t) const;

    /// Exact integral of the cubic from front_time() to t.
    double integral_from_front(double t) const;
    /// Exact integral over [s, t].
    double integral(double s, double t) const;
    /// Exact first-moment integral of r*y(r) over [s, t].
    double moment_integral(double s, double t) const;

    const std::vector<double>& times() const { return t_; }
    const std::vector<double>& values() const { return y_; }

private:
    std::size_t interval(double t) const;
    double partial_integral(std::size_t j, double theta) const;
    double partial_moment(std::size_t j, double theta) const;

    std::vector<double> t_, y_, m_;
    std::vector<double> cum_;     // integral from front to each knot
    std::vector<double> cum_mom_; // first-moment integral to each knot
};

/// The transport-speed path omega(t) = tau * V(t) of one run together
/// with its exact cumulative integral, the limiting speed, and bounds.
/// Everything the characteristic tracing needs: omega stays >= omega_min
/// > 0 and the cumulative is strictly increasing.
class OmegaPath {
public:
    OmegaPath(CubicSeries series, double omega_inf);

    /// Constant-speed path on [0, t_end], the autonomous special case.
    static OmegaPath constant(double omega0, double t_end, int n_samples = 16);

    double omega(double t) const { return series_(t); }
    /// Integral of omega over [s, t].
    double integral(double s, double t) const { return series_.integral(s, t); }
    /// Integral of (r - c) * omega(r) over [s, t], exact on the cubic.
    double weighted_integral(double s, double t, double c) const {
        return series_.moment_integral(s, t) - c * series_.integral(s, t);
    }

    double omega_inf() const { return omega_inf_; }
    double omega_min() const { return omega_min_; }
    double omega_max() const { return omega_max_; }
    double t_end() const { return series_.back_time(); }

    const CubicSeries& series() const { return series_; }

private:
    CubicSeries series_;
    double omega_inf_;
    double omega_min_;
    double omega_max_;
};

/// Extracts omega(t) = tau*V(t) from a trajectory, with slopes taken from
/// the moment system's right-hand side so the cubic interpolant is exact
/// to the integrator's accuracy. omega_inf comes from derive_constants for
/// the stated regime. Throws NotConverged when |tau*V(t_end) - omega_inf|
/// exceeds `terminal_tol`.
OmegaPath omega_path_from_trajectory(const OdeTrajectory& traj, Regime regime,
                                     double terminal_tol = 1e-8);

/// Interpolant of the boundary moment P(t) - x0*U(t) of a trajectory,
/// again with exact slopes from the right-hand side.
CubicSeries boundary_moment_series(const OdeTrajectory& traj);

} // namespace prion
