#include "dicke/hilbert.hpp"

#include <cmath>

#include "dicke/errors.hpp"

namespace dicke {

std::string_view to_string(Parity p) noexcept {
    switch (p) {
        case Parity::even: return "even";
        case Parity::odd: return "odd";
        case Parity::full: return "full";
    }
    return "full";
}

Parity parity_from_string(std::string_view s) {
    if (s == "even") return Parity::even;
    if (s == "odd") return Parity::odd;
    if (s == "full") return Parity::full;
    throw ValidationError("unknown parity sector '" + std::string(s) + "'");
}

// Parity eigenvalue is (-1)^(n + m + j); m + j = (two_m + N) / 2 is an integer.
bool BasisIndex::in_sector(int n, int two_m, int n_atoms, Parity sector) noexcept {
    if (sector == Parity::full) return true;
    const int k = (two_m + n_atoms) / 2;
    const bool even = ((n + k) % 2) == 0;
    return (sector == Parity::even) == even;
}

BasisIndex::BasisIndex(int n_atoms, int n_max, Parity sector)
    : n_atoms_(n_atoms), n_max_(n_max), sector_(sector) {
    if (n_atoms < 1) throw ValidationError("basis needs at least one atom");
    if (n_max < 0) throw ValidationError("boson cutoff must be non-negative");
    row_offset_.reserve(static_cast<std::size_t>(n_max) + 2);
    for (int n = 0; n <= n_max; ++n) {
        row_offset_.push_back(entries_.size());
        for (int two_m = -n_atoms; two_m <= n_atoms; two_m += 2) {
            if (in_sector(n, two_m, n_atoms, sector)) entries_.push_back({n, two_m});
        }
    }
    row_offset_.push_back(entries_.size());
}

std::optional<std::size_t> BasisIndex::index_of(int n, int two_m) const noexcept {
    if (n < 0 || n > n_max_ || two_m < -n_atoms_ || two_m > n_atoms_) return std::nullopt;
    if (((two_m + n_atoms_) & 1) != 0) return std::nullopt;
    if (!in_sector(n, two_m, n_atoms_, sector_)) return std::nullopt;
    const std::size_t k = static_cast<std::size_t>((two_m + n_atoms_) / 2);
    const std::size_t offset = row_offset_[static_cast<std::size_t>(n)];
    if (sector_ == Parity::full) return offset + k;
    // Within a sector row the allowed k share one parity; the first allowed k is 0 or 1.
    return offset + k / 2;
}

BasisIndex build_basis(const ModelParams& params, Parity sector) {
    params.validate();
    return BasisIndex(params.n_atoms, params.boson_cutoff, sector);
}

SymmetricMatrix::SymmetricMatrix(Storage lower) : lower_(std::move(lower)) {
    if (lower_.rows() != lower_.cols()) throw ValidationError("symmetric matrix must be square");
    lower_.makeCompressed();
    for (Eigen::Index c = 0; c < lower_.outerSize(); ++c) {
        for (Storage::InnerIterator it(lower_, c); it; ++it) {
            if (it.row() < it.col()) throw ValidationError("symmetric matrix storage must be lower-triangular");
            if (!std::isfinite(it.value())) throw ValidationError("symmetric matrix has a non-finite element");
        }
    }
}

void SymmetricMatrix::multiply(const Eigen::Ref<const Eigen::VectorXd>& x, Eigen::Ref<Eigen::VectorXd> y) const {
    y.noalias() = lower_.selfadjointView<Eigen::Lower>() * x;
}

Eigen::VectorXd SymmetricMatrix::operator*(const Eigen::VectorXd& x) const {
    Eigen::VectorXd y(dimension());
    multiply(x, y);
    return y;
}

double SymmetricMatrix::coeff(Eigen::Index row, Eigen::Index col) const {
    return row >= col ? lower_.coeff(row, col) : lower_.coeff(col, row);
}

Eigen::MatrixXd SymmetricMatrix::to_dense() const {
    Eigen::MatrixXd dense = Eigen::MatrixXd(lower_);
    return dense.selfadjointView<Eigen::Lower>();
}

namespace {

// <j, m+1| J_+ |j, m> in doubled-m units.
double ladder_up(double j, int two_m) {
    const double m = 0.5 * two_m;
    const double v = j * (j + 1.0) - m * (m + 1.0);
    return v > 0.0 ? std::sqrt(v) : 0.0;
}

}  // namespace

SymmetricMatrix hamiltonian_matrix(const ModelParams& params, const BasisIndex& basis) {
    params.validate();
    if (basis.n_atoms() != params.n_atoms || basis.n_max() != params.boson_cutoff) {
        throw ValidationError("basis was not built from these parameters");
    }
    const double j = params.spin_length();
    const double g = params.lambda / std::sqrt(2.0 * j);

    std::vector<Eigen::Triplet<double>> triplets;
    triplets.reserve(basis.size() * 3);
    for (std::size_t col = 0; col < basis.size(); ++col) {
        const auto& s = basis[col];
        const auto c = static_cast<Eigen::Index>(col);
        triplets.emplace_back(c, c, params.omega0 * s.m() + params.omega * s.n);
        if (g == 0.0) continue;
        // (a^dag + a)(J_+ + J_-): the a^dag branch reaches n+1, which always sorts later.
        const double boson = std::sqrt(static_cast<double>(s.n + 1));
        if (auto up = basis.index_of(s.n + 1, s.two_m + 2)) {
            triplets.emplace_back(static_cast<Eigen::Index>(*up), c, g * boson * ladder_up(j, s.two_m));
        }
        if (auto down = basis.index_of(s.n + 1, s.two_m - 2)) {
            triplets.emplace_back(static_cast<Eigen::Index>(*down), c, g * boson * ladder_up(j, s.two_m - 2));
        }
    }
    const auto dim = static_cast<Eigen::Index>(basis.size());
    SymmetricMatrix::Storage lower(dim, dim);
    lower.setFromTriplets(triplets.begin(), triplets.end());
    lower.prune(0.0);
    return SymmetricMatrix(std::move(lower));
}

SparseOperator collective_operator(CollectiveKind kind, const BasisIndex& basis) {
    const double j = basis.spin_length();
    std::vector<Eigen::Triplet<double>> triplets;
    triplets.reserve(basis.size());
    for (std::size_t col = 0; col < basis.size(); ++col) {
        const auto& s = basis[col];
        const auto c = static_cast<Eigen::Index>(col);
        const double m = s.m();
        switch (kind) {
            case CollectiveKind::jz:
                if (m != 0.0) triplets.emplace_back(c, c, m);
                break;
            case CollectiveKind::jz_squared:
                if (m != 0.0) triplets.emplace_back(c, c, m * m);
                break;
            case CollectiveKind::photon_number:
                if (s.n != 0) triplets.emplace_back(c, c, static_cast<double>(s.n));
                break;
            case CollectiveKind::jplus:
                if (auto row = basis.index_of(s.n, s.two_m + 2)) {
                    triplets.emplace_back(static_cast<Eigen::Index>(*row), c, ladder_up(j, s.two_m));
                }
                break;
            case CollectiveKind::jplus_jz:
                if (auto row = basis.index_of(s.n, s.two_m + 2)) {
                    triplets.emplace_back(static_cast<Eigen::Index>(*row), c, ladder_up(j, s.two_m) * m);
                }
                break;
            case CollectiveKind::jplus_squared:
                if (auto row = basis.index_of(s.n, s.two_m + 4)) {
                    const double amp = ladder_up(j, s.two_m) * ladder_up(j, s.two_m + 2);
                    triplets.emplace_back(static_cast<Eigen::Index>(*row), c, amp);
                }
                break;
        }
    }
    const auto dim = static_cast<Eigen::Index>(basis.size());
    SparseOperator op(dim, dim);
    op.setFromTriplets(triplets.begin(), triplets.end());
    return op;
}

nlohmann::json basis_descriptor(const ModelParams& params, const BasisIndex& basis) {
    return {
        {"omega", params.omega},
        {"omega0", params.omega0},
        {"lambda", params.lambda},
        {"n_atoms", params.n_atoms},
        {"boson_cutoff", params.boson_cutoff},
        {"sector", std::string(to_string(basis.sector()))},
        {"dimension", basis.size()},
        {"ordering", "n-major lexicographic (n, m)"},
    };
}

}  // namespace dicke
