#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <nlohmann/json.hpp>

#include "dicke/params.hpp"

namespace dicke {

/// Eigenvalue sector of the parity operator exp{i pi [a^dag a + J_z + j]}.
enum class Parity { even, odd, full };

std::string_view to_string(Parity p) noexcept;
Parity parity_from_string(std::string_view s);

/// One product state |n> (x) |j, m>. m is stored doubled so half-integers stay exact.
struct BasisState {
    int n;
    int two_m;

    double m() const noexcept { return 0.5 * two_m; }
    friend bool operator==(const BasisState&, const BasisState&) = default;
};

/// Fock (x) Dicke product basis restricted to a parity sector, ordered
/// lexicographically in (n, m).
class BasisIndex {
public:
    BasisIndex(int n_atoms, int n_max, Parity sector);

    int n_atoms() const noexcept { return n_atoms_; }
    int n_max() const noexcept { return n_max_; }
    Parity sector() const noexcept { return sector_; }
    double spin_length() const noexcept { return 0.5 * n_atoms_; }

    std::size_t size() const noexcept { return entries_.size(); }
    const std::vector<BasisState>& entries() const noexcept { return entries_; }
    const BasisState& operator[](std::size_t i) const { return entries_[i]; }

    /// Position of (n, 2m) in this basis, or nullopt if truncated away or in the other sector.
    std::optional<std::size_t> index_of(int n, int two_m) const noexcept;

    /// True if (n, 2m) belongs to `sector` (always true for full).
    static bool in_sector(int n, int two_m, int n_atoms, Parity sector) noexcept;

private:
    int n_atoms_;
    int n_max_;
    Parity sector_;
    std::vector<BasisState> entries_;
    std::vector<std::size_t> row_offset_;  // first index of each Fock row
};

BasisIndex build_basis(const ModelParams& params, Parity sector = Parity::even);

/// Real symmetric matrix; only the lower triangle (row >= col) is stored.
class SymmetricMatrix {
public:
    using Storage = Eigen::SparseMatrix<double, Eigen::ColMajor>;

    explicit SymmetricMatrix(Storage lower);

    Eigen::Index dimension() const noexcept { return lower_.rows(); }
    const Storage& lower() const noexcept { return lower_; }

    /// y = A x
    void multiply(const Eigen::Ref<const Eigen::VectorXd>& x, Eigen::Ref<Eigen::VectorXd> y) const;
    Eigen::VectorXd operator*(const Eigen::VectorXd& x) const;

    double coeff(Eigen::Index row, Eigen::Index col) const;
    Eigen::MatrixXd to_dense() const;

private:
    Storage lower_;
};

SymmetricMatrix hamiltonian_matrix(const ModelParams& params, const BasisIndex& basis);

enum class CollectiveKind {
    jz,
    jz_squared,
    jplus_squared,
    photon_number,
    jplus,          // parity-odd, used to check that parity-forced zeros vanish
    jplus_jz,
};

using SparseOperator = Eigen::SparseMatrix<double, Eigen::RowMajor>;

/// Matrix of a collective operator in `basis`. Operators that leave the
/// basis (J_+ in a parity sector, ladder endpoints) are dropped.
SparseOperator collective_operator(CollectiveKind kind, const BasisIndex& basis);

/// JSON descriptor (params + sector + dimension) attached to persisted state vectors.
nlohmann::json basis_descriptor(const ModelParams& params, const BasisIndex& basis);

}  // namespace dicke
