#pragma once

#include <cstddef>

#include <Eigen/Dense>

#include "dicke/hilbert.hpp"
#include "dicke/params.hpp"

namespace dicke {

/// Lowest eigenpair of a Hamiltonian restricted to some BasisIndex.
struct GroundState {
    double energy{0.0};
    Eigen::VectorXd amplitudes;  // unit norm
    double residual{0.0};        // ||H v - E v||
    std::size_t matvecs{0};
};

enum class SolverMethod {
    automatic,  // dense below dense_threshold, Lanczos above
    dense,
    lanczos,
};

struct SolverOptions {
    double tol{1e-10};
    SolverMethod method{SolverMethod::automatic};
    Eigen::Index dense_threshold{500};
    Eigen::Index krylov_dim{160};  // Lanczos steps per restart cycle
};

/// Minimal eigenvalue and unit eigenvector of `matrix`.
///
/// Both paths start from the normalized uniform positive vector and fix the
/// eigenvector sign so that its overlap with that vector is non-negative,
/// making results reproducible. Lanczos uses full reorthogonalization and
/// restarts from the current Ritz vector; the budget is 10 x dimension
/// matrix-vector products, after which NonConvergenceError is thrown with the
/// best residual seen.
GroundState lowest_eigenpair(const SymmetricMatrix& matrix, const SolverOptions& options = {});
GroundState lowest_eigenpair(const SymmetricMatrix& matrix, double tol);

struct CutoffPolicy {
    double tol{1e-8};       // max change of energy, <a^dag a> and field entropy
    int ceiling{1024};
    Parity sector{Parity::even};
    SolverOptions solver{};
};

struct CutoffResult {
    int n_max{0};
    BasisIndex basis{1, 0, Parity::full};
    GroundState state;
    double field_entropy{0.0};
    double photon_number{0.0};
    int solves{0};
};

/// Doubles the boson cutoff, starting at `params.boson_cutoff`, until the
/// ground energy, <a^dag a> and the field-mode entropy each change by less
/// than policy.tol (relative to the value once it exceeds one). Returns the
/// smaller cutoff of the final, agreeing pair together with its state.
///
/// Throws CutoffCeilingError naming the unconverged observable once the
/// next cutoff would exceed policy.ceiling.
CutoffResult converge_cutoff(ModelParams params, const CutoffPolicy& policy = {});

/// Ground state at a fixed cutoff.
CutoffResult solve_at_cutoff(const ModelParams& params, Parity sector, const SolverOptions& solver = {});

}  // namespace dicke
