#include "dicke/oracle/qubit_space.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include <Eigen/Eigenvalues>

namespace dicke::oracle {

QubitSpaceState solve_qubit_space(const ModelParams& params) {
    params.validate();
    const int n_atoms = params.n_atoms;
    const int n_max = params.boson_cutoff;
    const Eigen::Index spins = Eigen::Index{1} << n_atoms;
    const Eigen::Index dim = spins * (n_max + 1);
    const double g = params.lambda / std::sqrt(static_cast<double>(n_atoms));

    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
    for (int n = 0; n <= n_max; ++n) {
        for (Eigen::Index bits = 0; bits < spins; ++bits) {
            const Eigen::Index i = n * spins + bits;
            const int up = std::popcount(static_cast<unsigned long long>(bits));
            h(i, i) = params.omega0 * (up - 0.5 * n_atoms) + params.omega * n;
            if (n == n_max) continue;
            // a^dag (s+ + s-) on each atom; the hermitian partner fills the mirrored entry.
            for (int atom = 0; atom < n_atoms; ++atom) {
                const Eigen::Index flipped = bits ^ (Eigen::Index{1} << atom);
                const Eigen::Index j = (n + 1) * spins + flipped;
                const double amp = g * std::sqrt(n + 1.0);
                h(j, i) += amp;
                h(i, j) += amp;
            }
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
    QubitSpaceState out;
    out.n_atoms = n_atoms;
    out.n_max = n_max;
    out.energy = es.eigenvalues()(0);
    out.psi = es.eigenvectors().col(0);
    return out;
}

Eigen::Matrix4d two_atom_partial_trace(const QubitSpaceState& state) {
    const Eigen::Index spins = Eigen::Index{1} << state.n_atoms;
    auto pair_index = [](Eigen::Index bits) {
        const int a0 = static_cast<int>(bits & 1);
        const int a1 = static_cast<int>((bits >> 1) & 1);
        return (1 - a0) * 2 + (1 - a1);
    };
    Eigen::Matrix4d rho = Eigen::Matrix4d::Zero();
    for (int n = 0; n <= state.n_max; ++n) {
        for (Eigen::Index rest = 0; rest < spins; rest += 4) {
            for (Eigen::Index p = 0; p < 4; ++p) {
                for (Eigen::Index q = 0; q < 4; ++q) {
                    const double a = state.psi(n * spins + rest + p);
                    const double b = state.psi(n * spins + rest + q);
                    rho(pair_index(p), pair_index(q)) += a * b;
                }
            }
        }
    }
    return rho;
}

double parity_expectation(const QubitSpaceState& state) {
    const Eigen::Index spins = Eigen::Index{1} << state.n_atoms;
    double sum = 0.0;
    for (Eigen::Index i = 0; i < state.psi.size(); ++i) {
        const Eigen::Index n = i / spins;
        const int up = std::popcount(static_cast<unsigned long long>(i % spins));
        // a^dag a + J_z + j = n + (number of up atoms)
        const double sign = ((n + up) % 2 == 0) ? 1.0 : -1.0;
        sum += sign * state.psi(i) * state.psi(i);
    }
    return sum;
}

double x_state_concurrence(const Eigen::Matrix4d& rho) {
    const double a = std::abs(rho(0, 3)) - std::sqrt(std::max(0.0, rho(1, 1) * rho(2, 2)));
    const double b = std::abs(rho(1, 2)) - std::sqrt(std::max(0.0, rho(0, 0) * rho(3, 3)));
    return 2.0 * std::max({0.0, a, b});
}

}  // namespace dicke::oracle
