#include "prion/params.hpp"

#include <cmath>
#include <string>

#include "prion/errors.hpp"

namespace prion {

void validate(const Params& p) {
    auto check = [](double v, const char* name) {
        if (!(v > 0.0) || !std::isfinite(v)) {
            throw ValidationError(std::string(name) + " must be strictly positive, got " +
                                  std::to_string(v));
        }
    };
    check(p.lambda, "lambda");
    check(p.gamma, "gamma");
    check(p.tau, "tau");
    check(p.beta, "beta");
    check(p.mu, "mu");
    check(p.x0, "x0");
}

DerivedConstants derive_constants(const Params& p, Regime regime) {
    validate(p);
    DerivedConstants d;
    d.mu0 = p.mu0();
    d.R = p.threshold_ratio();
    d.omega_inf = (regime == Regime::disease_free) ? p.lambda * p.tau / p.gamma
                                                   : d.mu0 * d.mu0 / p.beta;
    d.a = d.mu0 / p.beta;
    return d;
}

Threshold threshold_classify(const Params& p, double tol) {
    validate(p);
    const double r = p.threshold_ratio();
    if (std::abs(r - 1.0) < tol) return Threshold::critical;
    return r < 1.0 ? Threshold::subcritical : Threshold::supercritical;
}

std::pair<double, double> moment_matrix_eigenvalues(const Params& p, double omega_inf) {
    validate(p);
    if (!(omega_inf > 0.0)) throw ValidationError("omega_inf must be positive");
    const double m0 = p.mu0();
    const double s = std::sqrt(p.beta * omega_inf);
    return {-m0 + s, -m0 - s};
}

} // namespace prion
