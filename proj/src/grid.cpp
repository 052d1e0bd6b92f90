#include "prion/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "prion/errors.hpp"
#include "prion/params.hpp"

namespace prion {

Grid::Grid(double x_left, double x_max, int n) : x_left_(x_left), x_max_(x_max), n_(n) {
    if (!(x_max > x_left)) throw ValidationError("grid requires x_max > x_left");
    if (n < 2) throw ValidationError("grid requires n >= 2, got " + std::to_string(n));
    dx_ = (x_max_ - x_left_) / static_cast<double>(n_);
}

std::vector<double> Grid::nodes() const {
    std::vector<double> xs(size());
    for (std::size_t i = 0; i < xs.size(); ++i) xs[i] = node(i);
    return xs;
}

Grid default_grid(const Params& p, int n) {
    validate(p);
    return Grid(p.x0, p.x0 + 25.0 * p.mu0() / p.beta, n);
}

Density::Density(Grid g, std::vector<double> v, Frame f)
    : grid(std::move(g)), values(std::move(v)), frame(f) {
    if (values.size() != grid.size())
        throw ValidationError("density sample count does not match grid");
}

double Density::min_value() const {
    return values.empty() ? 0.0 : *std::min_element(values.begin(), values.end());
}

Density Density::to_frame(Frame target, double x0) const {
    if (target == frame) return *this;
    const double shift = (target == Frame::shifted) ? -x0 : x0;
    Grid g(grid.x_left() + shift, grid.x_max() + shift, grid.n());
    return Density(g, values, target);
}

double trapezoid(const Density& u) {
    double s = 0.0;
    for (std::size_t i = 0; i < u.values.size(); ++i) s += u.grid.weight(i) * u.values[i];
    return s;
}

double first_moment(const Density& u) {
    double s = 0.0;
    for (std::size_t i = 0; i < u.values.size(); ++i)
        s += u.grid.weight(i) * u.grid.node(i) * u.values[i];
    return s;
}

std::pair<double, double> moments(const Density& u) {
    return {trapezoid(u), first_moment(u)};
}

std::vector<double> suffix_integral(const Density& u) {
    const std::size_t m = u.values.size();
    std::vector<double> s(m, 0.0);
    const double half = 0.5 * u.grid.dx();
    for (std::size_t i = m - 1; i-- > 0;)
        s[i] = s[i + 1] + half * (u.values[i] + u.values[i + 1]);
    return s;
}

double weighted_norm(const Density& u, double a) {
    double s = 0.0;
    for (std::size_t i = 0; i < u.values.size(); ++i) {
        const double xt = u.grid.node(i) - u.grid.x_left();
        s += u.grid.weight(i) * (a + xt) * std::abs(u.values[i]);
    }
    return s;
}

double weighted_integral(const Density& u, double a) {
    double s = 0.0;
    for (std::size_t i = 0; i < u.values.size(); ++i) {
        const double xt = u.grid.node(i) - u.grid.x_left();
        s += u.grid.weight(i) * (a + xt) * u.values[i];
    }
    return s;
}

} // namespace prion
