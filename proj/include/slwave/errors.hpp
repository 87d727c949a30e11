#pragma once

#include <stdexcept>
#include <string>

namespace slwave {

// Bad arguments, grid mismatches, malformed configuration.
struct UsageError : std::runtime_error {
    explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

// Invalid numeric parameter (eps too large, empty ladder, ...).
struct ParameterError : UsageError {
    explicit ParameterError(const std::string& what) : UsageError(what) {}
};

// Non-finite sample while evaluating a coefficient.
struct EvaluationError : std::runtime_error {
    EvaluationError(const std::string& what, double x)
        : std::runtime_error(what + " at x=" + std::to_string(x)), x(x) {}
    double x;
};

// ODE step-size underflow or step failure; carries the failing abscissa.
struct IntegrationError : std::runtime_error {
    IntegrationError(const std::string& what, double x)
        : std::runtime_error(what + " at x=" + std::to_string(x)), x(x) {}
    double x;
};

// Eigenvalue bracketing / Prufer-regime failures.
struct SpectralError : std::runtime_error {
    explicit SpectralError(const std::string& what) : std::runtime_error(what) {}
};

// A requested channel or estimate needs data the problem cannot provide.
struct CapabilityError : std::runtime_error {
    explicit CapabilityError(const std::string& what) : std::runtime_error(what) {}
};

// Time grid too coarse for the requested mode truncation.
struct ResolutionError : std::runtime_error {
    explicit ResolutionError(const std::string& what) : std::runtime_error(what) {}
};

// Reference finite-difference solver failed (instability, non-convergence).
struct OracleError : std::runtime_error {
    explicit OracleError(const std::string& what) : std::runtime_error(what) {}
};

// Regression over a ladder hit non-finite norms.
struct FitError : std::runtime_error {
    explicit FitError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace slwave
