#pragma once

#include <cstddef>
#include <utility>
#include <vector>

namespace prion {

struct Params;

/// Coordinate frame of a polymer-length axis. `original` starts at the
/// critical length x0; `shifted` starts at 0 with the decay constant mu0
/// absorbing beta*x0. Mixing frames silently is the main bug risk, so
/// every Density carries its frame tag and conversions are explicit.
enum class Frame { original, shifted };

/// Uniform grid on [x_left, x_max] with n intervals (n+1 nodes) and
/// composite-trapezoid quadrature weights.
class Grid {
public:
    Grid(double x_left, double x_max, int n);

    double x_left() const { return x_left_; }
    double x_max() const { return x_max_; }
    int n() const { return n_; }
    std::size_t size() const { return static_cast<std::size_t>(n_) + 1; }
    double dx() const { return dx_; }

    double node(std::size_t i) const { return x_left_ + static_cast<double>(i) * dx_; }
    /// Trapezoid weight: dx at interior nodes, dx/2 at the two ends.
    double weight(std::size_t i) const {
        return (i == 0 || i == static_cast<std::size_t>(n_)) ? 0.5 * dx_ : dx_;
    }

    std::vector<double> nodes() const;

    bool same_as(const Grid& other) const {
        return x_left_ == other.x_left_ && x_max_ == other.x_max_ && n_ == other.n_;
    }

private:
    double x_left_;
    double x_max_;
    int n_;
    double dx_;
};

/// Default truncated axis for a parameter set: [x0, x0 + 25*mu0/beta].
/// The equilibrium profile decays like exp(-z^2/2) in z = beta(x-x0)/mu0,
/// so the tail mass beyond 25 length scales is far below 1e-10.
Grid default_grid(const Params& p, int n = 2000);

/// Number-density samples on a grid, tagged with their coordinate frame.
struct Density {
    Grid grid;
    std::vector<double> values;
    Frame frame = Frame::original;

    Density(Grid g, Frame f) : grid(std::move(g)), values(grid.size(), 0.0), frame(f) {}
    Density(Grid g, std::vector<double> v, Frame f);

    double min_value() const;
    bool nonnegative(double tol = 0.0) const { return min_value() >= -tol; }

    /// Relabels the axis between frames by shifting it by x0; the sample
    /// values are untouched.
    Density to_frame(Frame target, double x0) const;
};

/// Composite trapezoid of the samples.
double trapezoid(const Density& u);

/// Trapezoid value of the first moment (integral of x * u(x)).
double first_moment(const Density& u);

/// (integral of u, integral of x*u): the polymer count and the monomer
/// count bound in polymers when u is an original-frame density.
std::pair<double, double> moments(const Density& u);

/// Suffix integrals S(x_i) = trapezoid integral of u over [x_i, x_max].
/// S is nonincreasing for u >= 0 and S(x_max) = 0.
std::vector<double> suffix_integral(const Density& u);

/// a*|u|_1 + |x~ u|_1 where x~ = x - x_left measures length from the left
/// endpoint of the axis. In the shifted frame this is the weight (a + x);
/// in the original frame the weight is a + (x - x0), which gives the same
/// value after a frame shift.
double weighted_norm(const Density& u, double a);

/// Signed counterpart of weighted_norm: integral of (a + x~) u(x) dx.
double weighted_integral(const Density& u, double a);

} // namespace prion
