#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "dicke/eigensolve.hpp"
#include "dicke/hilbert.hpp"
#include "dicke/params.hpp"

namespace dicke {

/// Real symmetric, unit-trace, positive semidefinite matrix. Validated on
/// construction; the spectrum is kept for entropy evaluation.
class DensityMatrix {
public:
    static constexpr double kTraceTol = 1e-10;
    static constexpr double kNegativeTol = 1e-10;

    /// Throws InvalidDensityMatrix on trace, symmetry or positivity violations.
    explicit DensityMatrix(Eigen::MatrixXd elements);

    Eigen::Index dimension() const noexcept { return elements_.rows(); }
    const Eigen::MatrixXd& elements() const noexcept { return elements_; }
    double operator()(Eigen::Index r, Eigen::Index c) const { return elements_(r, c); }
    /// Ascending eigenvalues, with values in [-kNegativeTol, 0) clamped to zero.
    const Eigen::VectorXd& spectrum() const noexcept { return spectrum_; }

private:
    Eigen::MatrixXd elements_;
    Eigen::VectorXd spectrum_;
};

/// rho(n, n') = sum_m psi(n, m) psi(n', m)
DensityMatrix field_rdm(const GroundState& state, const BasisIndex& basis);
/// rho(m, m') = sum_n psi(n, m) psi(n, m'), indexed by m + j.
DensityMatrix atomic_rdm(const GroundState& state, const BasisIndex& basis);

/// -sum p log2 p over the spectrum, in bits.
double von_neumann_entropy(const DensityMatrix& rho);
/// Same, for a bare probability vector. Throws on entries below -1e-10.
double shannon_entropy_bits(const Eigen::VectorXd& probabilities);

struct EntropyResult {
    double entropy{0.0};  // bits
    int schmidt_rank_bound{0};
};

EntropyResult field_entropy(const GroundState& state, const BasisIndex& basis);

struct CollectiveExpectations {
    double jz{0.0};
    double jz2{0.0};
    double jp2{0.0};
    double nbar{0.0};
};

/// Quadratic forms of J_z, J_z^2, J_+^2 and a^dag a.
///
/// Throws NumericalError if <J_+> or <J_+ J_z> exceed 1e-10 in magnitude:
/// the two-atom prescription drops those coherences, which is only valid
/// for parity eigenstates.
CollectiveExpectations collective_expectations(const GroundState& state, const BasisIndex& basis);

/// Two-qubit reduced state of a symmetric N-atom parity eigenstate, in the
/// basis {up-up, up-down, down-up, down-down}.
DensityMatrix two_atom_rdm(const CollectiveExpectations& expectations, int n_atoms);

struct ConcurrenceResult {
    double concurrence{0.0};
    double scaled{0.0};  // N * C
};

/// Square roots (descending) of the eigenvalues of rho (sy x sy) rho* (sy x sy),
/// with eigenvalues below 64 eps times the largest one counted as zero,
/// from the non-symmetric product directly.
Eigen::Vector4d spin_flip_roots_direct(const DensityMatrix& rho12);
/// Same spectrum via the symmetric form sqrt(rho) rho~ sqrt(rho).
Eigen::Vector4d spin_flip_roots_symmetric(const DensityMatrix& rho12);

/// Wootters concurrence max{0, l1 - l2 - l3 - l4}. Uses the symmetric route
/// when the direct route returns a complex or negative spectrum.
ConcurrenceResult wootters_concurrence(const DensityMatrix& rho12, int n_atoms);

/// One row of finite-N results.
struct ObservableRecord {
    ModelParams params;  // boson_cutoff holds the certified n_max
    double energy{0.0};
    double entropy{0.0};
    double concurrence{0.0};
    double scaled_concurrence{0.0};
    CollectiveExpectations expectations;
};

ObservableRecord measure(const ModelParams& params, const BasisIndex& basis, const GroundState& state);
ObservableRecord measure(const ModelParams& params, const CutoffResult& solved);

/// Column names of the observable CSV, in order.
const std::vector<std::string>& observable_csv_columns();
std::vector<double> observable_csv_values(const ObservableRecord& record);

}  // namespace dicke
