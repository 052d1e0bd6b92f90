#pragma once

#include <vector>

namespace prion {

/// Monotone C1 cubic interpolation on a uniform grid (Steffen's
/// construction): no overshoot, no new extrema, so nonnegative samples
/// interpolate to nonnegative values. Evaluates to 0 outside the span,
/// matching a density extended trivially.
class MonotoneCubic {
public:
    MonotoneCubic(double x_left, double dx, std::vector<double> y);

    double operator()(double x) const;

private:
    double x_left_;
    double dx_;
    std::vector<double> y_;
    std::vector<double> m_; // limited slopes
};

} // namespace prion
