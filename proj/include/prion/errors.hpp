#pragma once

#include <stdexcept>
#include <string>

namespace prion {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// The disease equilibrium was requested for parameters at or below threshold.
class SubcriticalParameters : public Error {
public:
    using Error::Error;
};

/// Adaptive step control underflowed the minimum step size.
class ToleranceNotMet : public Error {
public:
    using Error::Error;
};

/// A quantity that must settle to its limit had not converged at the end
/// of the computed horizon.
class NotConverged : public Error {
public:
    using Error::Error;
};

/// The advection step exceeded the CFL constraint.
class CflViolation : public Error {
public:
    using Error::Error;
};

/// A density acquired a negative value beyond the roundoff allowance.
class NegativeDensity : public Error {
public:
    using Error::Error;
};

/// Second-difference recovery produced more negative mass than the
/// noise budget allows.
class NoiseDominated : public Error {
public:
    using Error::Error;
};

/// The queried point lies outside the boundary-data region of the
/// characteristic fan.
class OutOfBoundaryRegion : public Error {
public:
    using Error::Error;
};

/// An operation that requires the disease-case relation between transport
/// speed and decay constants was called outside it.
class NotDiseaseCase : public Error {
public:
    using Error::Error;
};

/// Malformed config text (syntax level). Carries a 1-based line number.
class ParseError : public Error {
public:
    ParseError(int line, const std::string& msg)
        : Error("line " + std::to_string(line) + ": " + msg), line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

/// Structurally valid config with invalid or missing content.
class ValidationError : public Error {
public:
    using Error::Error;
};

} // namespace prion
