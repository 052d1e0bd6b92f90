#pragma once

#include <utility>

namespace prion {

/// The six kinetic constants of the polymerization--fragmentation model.
///
///   lambda  monomer source rate            [monomers / time]
///   gamma   monomer degradation rate       [1 / time]
///   tau     polymerization rate            [1 / (monomer * time)]
///   beta    fragmentation rate coefficient [1 / (length * time)]
///   mu      polymer degradation rate       [1 / time]
///   x0      critical chain length          [length]
///
/// All six must be strictly positive.
struct Params {
    double lambda;
    double gamma;
    double tau;
    double beta;
    double mu;
    double x0;

    /// mu + beta * x0, the decay constant seen in the shifted frame.
    double mu0() const { return mu + beta * x0; }

    /// Threshold ratio lambda*beta*tau / (gamma * mu0^2). The model is
    /// subcritical for R < 1 and supercritical for R > 1.
    double threshold_ratio() const {
        const double m0 = mu0();
        return lambda * beta * tau / (gamma * m0 * m0);
    }

    bool valid() const {
        return lambda > 0 && gamma > 0 && tau > 0 && beta > 0 && mu > 0 && x0 > 0;
    }
};

/// Throws ValidationError if any constant is not strictly positive.
void validate(const Params& p);

/// Which long-time transport speed the run is headed for.
enum class Regime { disease_free, disease };

/// Constants derived from Params that every solver shares.
struct DerivedConstants {
    double mu0;       ///< mu + beta*x0
    double a;         ///< weight of the L1 norm, default mu0/beta
    double omega_inf; ///< limiting transport speed tau*V(inf) for the regime
    double R;         ///< threshold ratio lambda*beta*tau/(gamma*mu0^2)
};

/// Computes mu0, omega_inf, the threshold ratio and the default norm
/// weight a = mu0/beta. omega_inf is lambda*tau/gamma in the disease-free
/// regime and mu0^2/beta in the disease regime.
DerivedConstants derive_constants(const Params& p, Regime regime);

enum class Threshold { subcritical, critical, supercritical };

/// Classifies the threshold ratio against 1. |R - 1| below `tol` counts
/// as critical; exact-rational parameter choices land there.
Threshold threshold_classify(const Params& p, double tol = 1e-12);

/// Eigenvalues (-mu0 + sqrt(beta*omega_inf), -mu0 - sqrt(beta*omega_inf))
/// of the 2x2 moment matrix that bounds the polymer moments. Both are
/// nonpositive exactly when beta*omega_inf <= mu0^2.
std::pair<double, double> moment_matrix_eigenvalues(const Params& p, double omega_inf);

} // namespace prion
