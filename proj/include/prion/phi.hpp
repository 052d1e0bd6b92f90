#pragma once

#include <cmath>

namespace prion {

/// Phi(r) = (r + r^2/2) exp(-(r + r^2/2)), the stationary shape profile.
/// Vanishes at 0, peaks below exp(-1), decays like exp(-r^2/2).
inline double phi(double r) {
    const double s = r + 0.5 * r * r;
    return s * std::exp(-s);
}

/// Analytic first derivative: (1+r)(1-s) e^{-s} with s = r + r^2/2.
inline double phi_prime(double r) {
    const double s = r + 0.5 * r * r;
    return (1.0 + r) * (1.0 - s) * std::exp(-s);
}

/// Analytic second derivative: [(1-s) - (1+r)^2 (2-s)] e^{-s}.
inline double phi_second(double r) {
    const double s = r + 0.5 * r * r;
    const double c = 1.0 + r;
    return ((1.0 - s) - c * c * (2.0 - s)) * std::exp(-s);
}

} // namespace prion
