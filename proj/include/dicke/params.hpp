#pragma once

#include <cmath>

namespace dicke {

/// Couplings of the single-mode Dicke Hamiltonian plus the Fock-space cutoff.
struct ModelParams {
    double omega{1.0};     // boson frequency
    double omega0{1.0};    // atomic splitting
    double lambda{0.0};    // atom-field coupling
    int n_atoms{1};        // N, spin length j = N/2
    int boson_cutoff{1};   // Fock states 0..boson_cutoff are kept

    /// Throws ValidationError if any field is out of range.
    void validate() const;

    double spin_length() const noexcept { return 0.5 * n_atoms; }
    double critical_coupling() const noexcept;
};

inline double critical_coupling(double omega, double omega0) noexcept {
    return 0.5 * std::sqrt(omega * omega0);
}

inline double ModelParams::critical_coupling() const noexcept {
    return dicke::critical_coupling(omega, omega0);
}

}  // namespace dicke
