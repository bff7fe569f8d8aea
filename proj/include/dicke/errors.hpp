#pragma once

#include <stdexcept>
#include <string>

namespace dicke {

/// Bad user input: invalid parameters, malformed grids, out-of-range options.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A numerical procedure failed to reach its target.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NonConvergenceError : public NumericalError {
public:
    NonConvergenceError(const std::string& what, double best_residual)
        : NumericalError(what), best_residual_(best_residual) {}
    double best_residual() const noexcept { return best_residual_; }

private:
    double best_residual_;
};

/// Boson cutoff reached the hard ceiling before observables converged.
class CutoffCeilingError : public NumericalError {
public:
    CutoffCeilingError(const std::string& what, std::string observable)
        : NumericalError(what), observable_(std::move(observable)) {}
    const std::string& observable() const noexcept { return observable_; }

private:
    std::string observable_;
};

/// Quantity diverges at the critical point.
class DivergenceError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Maximum of a sampled curve sits on the edge of the grid.
class BoundaryMaximumError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A matrix that should be a density matrix is not positive semidefinite.
class InvalidDensityMatrix : public NumericalError {
public:
    using NumericalError::NumericalError;
};

}  // namespace dicke
