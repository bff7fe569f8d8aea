#pragma once

#include <Eigen/Dense>

#include "dicke/params.hpp"

// Reference solutions built without the collective-spin basis. Used by the
// test suites and the `validate` command to certify the symmetric-state
// two-atom prescription.
namespace dicke::oracle {

/// Ground state of the Dicke Hamiltonian on the full 2^N qubit space times
/// Fock states 0..boson_cutoff. Index = n * 2^N + bits, bit i set = atom i up.
struct QubitSpaceState {
    int n_atoms{0};
    int n_max{0};
    double energy{0.0};
    Eigen::VectorXd psi;
};

QubitSpaceState solve_qubit_space(const ModelParams& params);

/// Reduced state of atoms 0 and 1 in the basis {uu, ud, du, dd}.
Eigen::Matrix4d two_atom_partial_trace(const QubitSpaceState& state);

/// Parity <exp(i pi (a^dag a + J_z + j))> of the state.
double parity_expectation(const QubitSpaceState& state);

/// Concurrence of an X-shaped real two-qubit state,
/// 2 max{0, |rho_14| - sqrt(rho_22 rho_33), |rho_23| - sqrt(rho_11 rho_44)}.
double x_state_concurrence(const Eigen::Matrix4d& rho);

}  // namespace dicke::oracle
